#pragma once

#include <span>
#include <vector>

#include "firepx/color.hpp"
#include "firepx/rules.hpp"

namespace firepx {

struct RocPoint {
    int th = 0;
    double tpr = 0.0;
    double fpr = 0.0;

    friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

/// One point per swept threshold, ordered by th ascending. Raising the gap
/// threshold can only remove detections, so both rates are monotone
/// non-increasing along the curve.
struct RocCurve {
    std::vector<RocPoint> points;

    friend bool operator==(const RocCurve&, const RocCurve&) = default;
};

/// Sweeps the rule-6 threshold over the inclusive integer range
/// [th_lo, th_hi] and records the image-level detection rates: tpr is the
/// fraction of fire-set images classified as fire, fpr the fraction of
/// no-fire-set images classified as fire. The sweep pipeline applies rules
/// 1-5 plus the thresholded rule 6; rule 7 stays out of calibration.
RocCurve sweep_roc(std::span<const RgbImage> fire_set, std::span<const RgbImage> nofire_set,
                   const ClassifierConfig& base, int th_lo = 1, int th_hi = 100);

struct ThresholdPick {
    int th = 0;
    RocPoint point;
    /// False when no swept point met both targets and the pick fell back to
    /// the best tpr - fpr tradeoff.
    bool met_targets = false;
};

/// Largest threshold whose point reaches tpr_min while keeping fpr strictly
/// under fpr_max. When no point qualifies, falls back to the point
/// maximizing tpr - fpr (largest th on ties) with met_targets cleared.
ThresholdPick pick_threshold(const RocCurve& curve, double tpr_min = 0.95, double fpr_max = 0.30);

}  // namespace firepx
