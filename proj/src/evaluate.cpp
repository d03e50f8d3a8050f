#include "firepx/evaluate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace firepx {

namespace {

std::optional<double> pct(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0) return std::nullopt;
    return 100.0 * static_cast<double>(numerator) / static_cast<double>(denominator);
}

double round_places(double v, int places) {
    const double scale = std::pow(10.0, places);
    return std::round(v * scale) / scale;
}

std::optional<double> round_pct(const std::optional<double>& v) {
    if (!v) return std::nullopt;
    return round_places(*v, 2);
}

void append_stat(std::ostringstream& out, const char* key, const std::optional<double>& v) {
    out << key << ": ";
    if (v)
        out << *v;
    else
        out << "undefined";
    out << '\n';
}

nlohmann::json json_stat(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

struct RoundedReport {
    ClassStats fire;
    ClassStats nofire;
    double overall_accuracy_pct = 0.0;
    std::optional<double> kappa;
    std::optional<double> mean_fire_mask_iou;
};

// Single rounding point shared by both renderers so they cannot drift.
RoundedReport round_report(const EvalReport& report, const ReportExtras& extras) {
    RoundedReport r;
    r.fire = {round_pct(report.fire.omission_pct), round_pct(report.fire.commission_pct),
              round_pct(report.fire.user_accuracy_pct), round_pct(report.fire.producer_accuracy_pct)};
    r.nofire = {round_pct(report.nofire.omission_pct), round_pct(report.nofire.commission_pct),
                round_pct(report.nofire.user_accuracy_pct),
                round_pct(report.nofire.producer_accuracy_pct)};
    r.overall_accuracy_pct = round_places(report.overall_accuracy_pct, 2);
    if (report.kappa) r.kappa = round_places(*report.kappa, 4);
    if (extras.mean_fire_mask_iou) r.mean_fire_mask_iou = round_places(*extras.mean_fire_mask_iou, 4);
    return r;
}

}  // namespace

ErrorMatrix build_matrix(std::span<const bool> fire_detected, std::span<const bool> nofire_detected) {
    ErrorMatrix m;
    for (bool detected : fire_detected) {
        if (detected)
            ++m.fire_as_fire;
        else
            ++m.fire_as_nofire;
    }
    for (bool detected : nofire_detected) {
        if (detected)
            ++m.nofire_as_fire;
        else
            ++m.nofire_as_nofire;
    }
    return m;
}

EvalReport derive_report(const ErrorMatrix& m) {
    const std::uint64_t total = m.total();
    if (total == 0) throw std::invalid_argument("derive_report: empty matrix");

    EvalReport report;
    report.matrix = m;

    report.fire.omission_pct = pct(m.fire_as_nofire, m.col_fire());
    report.fire.commission_pct = pct(m.nofire_as_fire, m.row_fire());
    report.fire.user_accuracy_pct = pct(m.fire_as_fire, m.row_fire());
    report.fire.producer_accuracy_pct = pct(m.fire_as_fire, m.col_fire());

    report.nofire.omission_pct = pct(m.nofire_as_fire, m.col_nofire());
    report.nofire.commission_pct = pct(m.fire_as_nofire, m.row_nofire());
    report.nofire.user_accuracy_pct = pct(m.nofire_as_nofire, m.row_nofire());
    report.nofire.producer_accuracy_pct = pct(m.nofire_as_nofire, m.col_nofire());

    const double t = static_cast<double>(total);
    report.overall_accuracy_pct =
        100.0 * static_cast<double>(m.fire_as_fire + m.nofire_as_nofire) / t;

    const double p_o = static_cast<double>(m.fire_as_fire + m.nofire_as_nofire) / t;
    const double p_e = (static_cast<double>(m.row_fire()) * static_cast<double>(m.col_fire()) +
                        static_cast<double>(m.row_nofire()) * static_cast<double>(m.col_nofire())) /
                       (t * t);
    if (p_e < 1.0) report.kappa = (p_o - p_e) / (1.0 - p_e);
    return report;
}

std::string_view kappa_quality(double kappa) noexcept {
    return kappa > 0.75 ? "good" : "not good";
}

std::string report_to_text(const EvalReport& report, const ReportExtras& extras) {
    const RoundedReport r = round_report(report, extras);
    const ErrorMatrix& m = report.matrix;

    std::ostringstream out;
    out << "matrix.fire_as_fire: " << m.fire_as_fire << '\n';
    out << "matrix.nofire_as_fire: " << m.nofire_as_fire << '\n';
    out << "matrix.fire_as_nofire: " << m.fire_as_nofire << '\n';
    out << "matrix.nofire_as_nofire: " << m.nofire_as_nofire << '\n';
    out << "matrix.total: " << m.total() << '\n';
    append_stat(out, "fire.omission_pct", r.fire.omission_pct);
    append_stat(out, "fire.commission_pct", r.fire.commission_pct);
    append_stat(out, "fire.user_accuracy_pct", r.fire.user_accuracy_pct);
    append_stat(out, "fire.producer_accuracy_pct", r.fire.producer_accuracy_pct);
    append_stat(out, "nofire.omission_pct", r.nofire.omission_pct);
    append_stat(out, "nofire.commission_pct", r.nofire.commission_pct);
    append_stat(out, "nofire.user_accuracy_pct", r.nofire.user_accuracy_pct);
    append_stat(out, "nofire.producer_accuracy_pct", r.nofire.producer_accuracy_pct);
    out << "overall_accuracy_pct: " << r.overall_accuracy_pct << '\n';
    append_stat(out, "kappa", r.kappa);
    out << "kappa_quality: " << (r.kappa ? kappa_quality(*r.kappa) : "undefined") << '\n';
    out << "excluded.fire: " << extras.excluded_fire << '\n';
    out << "excluded.nofire: " << extras.excluded_nofire << '\n';
    if (r.mean_fire_mask_iou) out << "mean_fire_mask_iou: " << *r.mean_fire_mask_iou << '\n';
    return out.str();
}

std::string report_to_json(const EvalReport& report, const ReportExtras& extras) {
    const RoundedReport r = round_report(report, extras);
    const ErrorMatrix& m = report.matrix;

    nlohmann::json doc;
    doc["matrix"] = {
        {"fire_as_fire", m.fire_as_fire},         {"nofire_as_fire", m.nofire_as_fire},
        {"fire_as_nofire", m.fire_as_nofire},     {"nofire_as_nofire", m.nofire_as_nofire},
        {"total", m.total()},
    };
    doc["fire"] = {
        {"omission_pct", json_stat(r.fire.omission_pct)},
        {"commission_pct", json_stat(r.fire.commission_pct)},
        {"user_accuracy_pct", json_stat(r.fire.user_accuracy_pct)},
        {"producer_accuracy_pct", json_stat(r.fire.producer_accuracy_pct)},
    };
    doc["nofire"] = {
        {"omission_pct", json_stat(r.nofire.omission_pct)},
        {"commission_pct", json_stat(r.nofire.commission_pct)},
        {"user_accuracy_pct", json_stat(r.nofire.user_accuracy_pct)},
        {"producer_accuracy_pct", json_stat(r.nofire.producer_accuracy_pct)},
    };
    doc["overall_accuracy_pct"] = r.overall_accuracy_pct;
    doc["kappa"] = json_stat(r.kappa);
    doc["kappa_quality"] = r.kappa ? nlohmann::json(kappa_quality(*r.kappa)) : nlohmann::json(nullptr);
    doc["excluded"] = {{"fire", extras.excluded_fire}, {"nofire", extras.excluded_nofire}};
    if (r.mean_fire_mask_iou) doc["mean_fire_mask_iou"] = *r.mean_fire_mask_iou;
    return doc.dump(2) + "\n";
}

}  // namespace firepx
