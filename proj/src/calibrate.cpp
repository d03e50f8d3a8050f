#include "firepx/calibrate.hpp"

#include <stdexcept>
#include <vector>

#include "firepx/parallel.hpp"

namespace firepx {

namespace {

// The sweep varies the chroma-gap threshold with rules 1 through 5 as the
// fixed context; the fixed-band rule 7 is kept out so it cannot mask the
// effect of the threshold under study.
ClassifierConfig sweep_config(const ClassifierConfig& base, int th) {
    ClassifierConfig cfg = base;
    cfg.enabled_rules = static_cast<std::uint8_t>((base.enabled_rules | (1u << 5)) & ~(1u << 6));
    cfg.rule6_th = static_cast<double>(th);
    return cfg;
}

}  // namespace

RocCurve sweep_roc(std::span<const RgbImage> fire_set, std::span<const RgbImage> nofire_set,
                   const ClassifierConfig& base, int th_lo, int th_hi) {
    base.validate();
    if (fire_set.empty() || nofire_set.empty())
        throw std::invalid_argument("sweep_roc: both image sets must be non-empty");
    if (th_lo < 1 || th_hi < th_lo)
        throw std::invalid_argument("sweep_roc: invalid threshold range");

    const std::size_t n_th = static_cast<std::size_t>(th_hi - th_lo + 1);
    const std::size_t n_fire = fire_set.size();
    const std::size_t n_total = n_fire + nofire_set.size();

    // decisions[i * n_th + t]: image i classified as fire at threshold th_lo + t.
    std::vector<std::uint8_t> decisions(n_total * n_th, 0);
    parallel_for(n_total, [&](std::size_t i) {
        const RgbImage& img = i < n_fire ? fire_set[i] : nofire_set[i - n_fire];
        const YcbcrImage ycc = convert_image(img);
        const ChannelMeans means = channel_means(ycc);
        for (std::size_t t = 0; t < n_th; ++t) {
            const ClassifierConfig cfg = sweep_config(base, th_lo + static_cast<int>(t));
            const Detection det = segment_converted(img, ycc, means, cfg);
            decisions[i * n_th + t] = det.is_fire_image ? 1 : 0;
        }
    });

    RocCurve curve;
    curve.points.reserve(n_th);
    for (std::size_t t = 0; t < n_th; ++t) {
        std::size_t tp = 0, fp = 0;
        for (std::size_t i = 0; i < n_fire; ++i) tp += decisions[i * n_th + t];
        for (std::size_t i = n_fire; i < n_total; ++i) fp += decisions[i * n_th + t];
        curve.points.push_back({th_lo + static_cast<int>(t),
                                static_cast<double>(tp) / static_cast<double>(n_fire),
                                static_cast<double>(fp) / static_cast<double>(nofire_set.size())});
    }

    // Raising the gap threshold can only shrink the positive set, so both
    // rates must be non-increasing; a violation means the sweep is broken.
    for (std::size_t t = 1; t < curve.points.size(); ++t) {
        if (curve.points[t].tpr > curve.points[t - 1].tpr ||
            curve.points[t].fpr > curve.points[t - 1].fpr)
            throw std::logic_error("sweep_roc: rates increased with a stricter threshold");
    }
    return curve;
}

ThresholdPick pick_threshold(const RocCurve& curve, double tpr_min, double fpr_max) {
    if (curve.points.empty()) throw std::invalid_argument("pick_threshold: empty curve");

    const RocPoint* best_meeting = nullptr;
    for (const RocPoint& p : curve.points) {
        if (p.tpr >= tpr_min && p.fpr < fpr_max) {
            if (!best_meeting || p.th > best_meeting->th) best_meeting = &p;
        }
    }
    if (best_meeting) return {best_meeting->th, *best_meeting, true};

    const RocPoint* best = nullptr;
    for (const RocPoint& p : curve.points) {
        if (!best || p.tpr - p.fpr > best->tpr - best->fpr ||
            (p.tpr - p.fpr == best->tpr - best->fpr && p.th > best->th))
            best = &p;
    }
    return {best->th, *best, false};
}

}  // namespace firepx
