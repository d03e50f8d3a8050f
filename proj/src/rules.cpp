#include "firepx/rules.hpp"

#include <cmath>
#include <stdexcept>

namespace firepx {

void ClassifierConfig::validate() const {
    const auto in_byte_range = [](int v) { return v >= 0 && v <= 255; };
    if (!in_byte_range(rule2_r_min) || !in_byte_range(rule2_g_min) || !in_byte_range(rule2_b_max) ||
        !in_byte_range(rule7_cb_max) || !in_byte_range(rule7_cr_min))
        throw std::invalid_argument("config: channel thresholds must lie in [0, 255]");
    if (rule6_th < 0.0 || !std::isfinite(rule6_th))
        throw std::invalid_argument("config: chroma gap threshold must be finite and non-negative");
    if (min_fire_pixels == 0)
        throw std::invalid_argument("config: min_fire_pixels must be at least 1");
    if (enabled_rules == 0)
        throw std::invalid_argument("config: at least one rule must be enabled");
    if ((enabled_rules & ~kAllRules) != 0)
        throw std::invalid_argument("config: unknown rule bits set");
}

bool rule1(PixelRgb p) noexcept {
    return p.r > p.g && p.g > p.b;
}

bool rule2(PixelRgb p, const ClassifierConfig& cfg) noexcept {
    return p.r > cfg.rule2_r_min && p.g > cfg.rule2_g_min && p.b < cfg.rule2_b_max;
}

bool rule3(const PixelYcbcr& p) noexcept {
    return p.y >= p.cb;
}

bool rule4(const PixelYcbcr& p) noexcept {
    return p.cr >= p.cb;
}

bool rule5(const PixelYcbcr& p, const ChannelMeans& means) noexcept {
    return p.y >= means.y && p.cb <= means.cb && p.cr >= means.cr;
}

bool rule6(const PixelYcbcr& p, const ClassifierConfig& cfg) noexcept {
    return std::abs(p.cb - p.cr) >= cfg.rule6_th;
}

bool rule7(const PixelYcbcr& p, const ClassifierConfig& cfg) noexcept {
    return p.cb <= cfg.rule7_cb_max && p.cr >= cfg.rule7_cr_min;
}

bool classify_pixel(PixelRgb rgb, const PixelYcbcr& ycc, const ChannelMeans& means,
                    const ClassifierConfig& cfg) noexcept {
    if (cfg.rule_enabled(1) && !rule1(rgb)) return false;
    if (cfg.rule_enabled(2) && !rule2(rgb, cfg)) return false;
    if (cfg.rule_enabled(3) && !rule3(ycc)) return false;
    if (cfg.rule_enabled(4) && !rule4(ycc)) return false;
    if (cfg.rule_enabled(5) && !rule5(ycc, means)) return false;
    if (cfg.rule_enabled(6) && !rule6(ycc, cfg)) return false;
    if (cfg.rule_enabled(7) && !rule7(ycc, cfg)) return false;
    return true;
}

Detection segment_converted(const RgbImage& img, const YcbcrImage& ycc, const ChannelMeans& means,
                            const ClassifierConfig& cfg, bool emit_per_rule) {
    cfg.validate();
    if (img.width() != ycc.width() || img.height() != ycc.height())
        throw std::invalid_argument("segment: converted image dimensions do not match");

    Detection det;
    det.fire_mask = RuleMask(img.width(), img.height());

    if (emit_per_rule) {
        std::array<RuleMask, 7> per;
        for (auto& m : per) m = RuleMask(img.width(), img.height());
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                const PixelRgb& rgb = img.at(x, y);
                const PixelYcbcr& p = ycc.at(x, y);
                const bool hits[7] = {
                    rule1(rgb),        rule2(rgb, cfg), rule3(p),        rule4(p),
                    rule5(p, means),   rule6(p, cfg),   rule7(p, cfg),
                };
                bool fire = true;
                for (int i = 0; i < 7; ++i) {
                    per[i].set(x, y, hits[i]);
                    if (cfg.rule_enabled(i + 1) && !hits[i]) fire = false;
                }
                det.fire_mask.set(x, y, fire);
            }
        }
        det.per_rule_masks = std::move(per);
    } else {
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x)
                det.fire_mask.set(x, y, classify_pixel(img.at(x, y), ycc.at(x, y), means, cfg));
    }

    det.fire_pixel_count = det.fire_mask.population();
    det.is_fire_image = det.fire_pixel_count >= cfg.min_fire_pixels;
    return det;
}

Detection segment(const RgbImage& img, const ClassifierConfig& cfg, bool emit_per_rule) {
    const YcbcrImage ycc = convert_image(img);
    const ChannelMeans means = channel_means(ycc);
    return segment_converted(img, ycc, means, cfg, emit_per_rule);
}

}  // namespace firepx
