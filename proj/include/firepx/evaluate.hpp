#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace firepx {

/// 2x2 image-level confusion counts. Rows are classifier verdicts, columns
/// are ground truth.
struct ErrorMatrix {
    std::uint64_t fire_as_fire = 0;      // fire image classified fire
    std::uint64_t nofire_as_fire = 0;    // no-fire image classified fire
    std::uint64_t fire_as_nofire = 0;    // fire image missed
    std::uint64_t nofire_as_nofire = 0;  // no-fire image classified no-fire

    std::uint64_t row_fire() const noexcept { return fire_as_fire + nofire_as_fire; }
    std::uint64_t row_nofire() const noexcept { return fire_as_nofire + nofire_as_nofire; }
    std::uint64_t col_fire() const noexcept { return fire_as_fire + fire_as_nofire; }
    std::uint64_t col_nofire() const noexcept { return nofire_as_fire + nofire_as_nofire; }
    std::uint64_t total() const noexcept { return row_fire() + row_nofire(); }

    friend bool operator==(const ErrorMatrix&, const ErrorMatrix&) = default;
};

/// Percent statistics for one class. A statistic whose denominator is zero
/// is absent, never reported as 0 or 100.
struct ClassStats {
    std::optional<double> omission_pct;
    std::optional<double> commission_pct;
    std::optional<double> user_accuracy_pct;
    std::optional<double> producer_accuracy_pct;
};

struct EvalReport {
    ErrorMatrix matrix;
    ClassStats fire;
    ClassStats nofire;
    double overall_accuracy_pct = 0.0;
    std::optional<double> kappa;  // absent when expected agreement is 1
};

/// Tallies per-image verdicts against their ground-truth labels.
ErrorMatrix build_matrix(std::span<const bool> fire_detected, std::span<const bool> nofire_detected);

/// Omission/commission errors, user/producer/overall accuracy, and the
/// chance-corrected kappa coefficient. Requires a non-empty matrix.
EvalReport derive_report(const ErrorMatrix& m);

/// Strictly above 0.75 grades "good", anything else "not good".
std::string_view kappa_quality(double kappa) noexcept;

/// Optional additions carried into rendered reports.
struct ReportExtras {
    std::uint64_t excluded_fire = 0;
    std::uint64_t excluded_nofire = 0;
    /// Mean mask overlap on fire images; a diagnostic extra, present only
    /// when ground-truth masks were available.
    std::optional<double> mean_fire_mask_iou;
};

/// Key-value text rendering. Percentages are emitted at 2 decimals, kappa
/// at 4; both renderers emit the same rounded numbers.
std::string report_to_text(const EvalReport& report, const ReportExtras& extras = {});
std::string report_to_json(const EvalReport& report, const ReportExtras& extras = {});

}  // namespace firepx
