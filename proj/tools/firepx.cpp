#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "firepx/calibrate.hpp"
#include "firepx/evaluate.hpp"
#include "firepx/fixtures.hpp"
#include "firepx/image_io.hpp"
#include "firepx/manifest.hpp"
#include "firepx/parallel.hpp"
#include "firepx/rules.hpp"

namespace fs = std::filesystem;
using namespace firepx;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitFire = 3;

void add_classifier_flags(CLI::App* sub, ClassifierConfig& cfg, std::string& config_path) {
    sub->add_option("--th", cfg.rule6_th, "chroma gap threshold of rule 6")
        ->capture_default_str();
    sub->add_option("--r-min", cfg.rule2_r_min, "rule 2: red must exceed this")
        ->capture_default_str();
    sub->add_option("--g-min", cfg.rule2_g_min, "rule 2: green must exceed this")
        ->capture_default_str();
    sub->add_option("--b-max", cfg.rule2_b_max, "rule 2: blue must stay below this")
        ->capture_default_str();
    sub->add_option("--cb-max", cfg.rule7_cb_max, "rule 7: Cb ceiling")->capture_default_str();
    sub->add_option("--cr-min", cfg.rule7_cr_min, "rule 7: Cr floor")->capture_default_str();
    sub->add_option("--min-fire-pixels", cfg.min_fire_pixels,
                    "fire pixels needed to call the image fire")
        ->capture_default_str();
    sub->add_option("--config", config_path, "flat key=value file; flags still win");
}

std::string trimmed(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return {};
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

double parse_config_number(const std::string& key, const std::string& value, int line_no) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || value.empty())
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": value of '" +
                                    key + "' is not a number");
    return parsed;
}

// Sits between built-in defaults and flags: a key is skipped when its flag
// was given on the command line.
void apply_config_file(const CLI::App& sub, const std::string& path, ClassifierConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trimmed(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value");
        const std::string key = trimmed(stripped.substr(0, eq));
        const std::string value = trimmed(stripped.substr(eq + 1));

        const bool known = key == "th" || key == "r-min" || key == "g-min" || key == "b-max" ||
                           key == "cb-max" || key == "cr-min" || key == "min-fire-pixels";
        if (!known)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        if (sub.count("--" + key) > 0) continue;
        const double number = parse_config_number(key, value, line_no);
        if (key == "th")
            cfg.rule6_th = number;
        else if (key == "r-min")
            cfg.rule2_r_min = static_cast<int>(number);
        else if (key == "g-min")
            cfg.rule2_g_min = static_cast<int>(number);
        else if (key == "b-max")
            cfg.rule2_b_max = static_cast<int>(number);
        else if (key == "cb-max")
            cfg.rule7_cb_max = static_cast<int>(number);
        else if (key == "cr-min")
            cfg.rule7_cr_min = static_cast<int>(number);
        else
            cfg.min_fire_pixels = static_cast<std::size_t>(number);
    }
}

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<fs::path> list_directory_images(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError(IoErrorKind::missing_file, "not a directory: " + dir.string());
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && has_image_extension(entry.path())) paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    return paths;
}

struct BatchItem {
    bool ok = false;
    std::string error;
    std::size_t fire_pixels = 0;
    bool is_fire = false;
    std::optional<double> iou;
};

// Per-file work runs on the thread pool; lines are emitted afterwards in
// input order.
std::vector<BatchItem> run_batch(const std::vector<fs::path>& paths, const ClassifierConfig& cfg) {
    std::vector<BatchItem> items(paths.size());
    parallel_for(paths.size(), [&](std::size_t i) {
        try {
            const RgbImage img = load_image(paths[i]);
            const Detection det = segment(img, cfg);
            items[i] = {true, {}, det.fire_pixel_count, det.is_fire_image, std::nullopt};
        } catch (const std::exception& e) {
            items[i].error = e.what();
        }
    });
    return items;
}

int cmd_detect(const std::vector<fs::path>& paths, const ClassifierConfig& cfg, bool fail_on_fire) {
    const std::vector<BatchItem> items = run_batch(paths, cfg);
    std::size_t failures = 0;
    bool any_fire = false;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const BatchItem& item = items[i];
        if (!item.ok) {
            ++failures;
            std::cerr << paths[i].string() << " ERROR " << item.error << '\n';
            continue;
        }
        any_fire = any_fire || item.is_fire;
        std::cout << paths[i].string() << ' ' << item.fire_pixels << ' '
                  << (item.is_fire ? "FIRE" : "NOFIRE") << '\n';
    }
    if (failures == items.size()) return kExitIo;
    if (fail_on_fire && any_fire) return kExitFire;
    return kExitOk;
}

int cmd_segment(const fs::path& input, const ClassifierConfig& cfg, bool per_rule,
                std::optional<fs::path> outdir) {
    const RgbImage img = load_image(input);
    const Detection det = segment(img, cfg, per_rule);

    const fs::path dir = outdir.value_or(input.parent_path());
    if (!dir.empty()) fs::create_directories(dir);
    const std::string stem = input.stem().string();

    write_mask(det.fire_mask, dir / (stem + ".mask.png"));
    save_image(render_overlay(img, det.fire_mask), dir / (stem + ".overlay.png"));
    if (per_rule) {
        for (int i = 0; i < 7; ++i)
            write_mask((*det.per_rule_masks)[i],
                       dir / (stem + ".rule" + std::to_string(i + 1) + ".mask.png"));
    }

    std::cout << input.string() << ' ' << det.fire_pixel_count << ' '
              << (det.is_fire_image ? "FIRE" : "NOFIRE") << '\n';
    return kExitOk;
}

std::vector<RgbImage> load_manifest_images(const Manifest& manifest) {
    std::vector<RgbImage> images(manifest.entries.size());
    std::vector<std::string> errors(manifest.entries.size());
    parallel_for(manifest.entries.size(), [&](std::size_t i) {
        try {
            images[i] = load_image(manifest.entries[i].path);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const std::string& err : errors)
        if (!err.empty()) throw IoError(IoErrorKind::corrupt_data, err);
    return images;
}

int cmd_calibrate(const fs::path& fire_manifest, const fs::path& nofire_manifest,
                  const ClassifierConfig& cfg, double tpr_min, double fpr_max,
                  const fs::path& outdir) {
    const Manifest fire = load_manifest(fire_manifest);
    const Manifest nofire = load_manifest(nofire_manifest);
    const std::vector<RgbImage> fire_images = load_manifest_images(fire);
    const std::vector<RgbImage> nofire_images = load_manifest_images(nofire);

    const RocCurve curve = sweep_roc(fire_images, nofire_images, cfg);
    const ThresholdPick pick = pick_threshold(curve, tpr_min, fpr_max);

    fs::create_directories(outdir);
    {
        std::ofstream tsv(outdir / "roc.tsv", std::ios::trunc);
        if (!tsv) throw IoError(IoErrorKind::write_failure, "cannot write roc.tsv");
        tsv << "th\ttpr\tfpr\n";
        for (const RocPoint& p : curve.points) {
            std::ostringstream row;
            row.precision(6);
            row << std::fixed << p.th << '\t' << p.tpr << '\t' << p.fpr << '\n';
            tsv << row.str();
        }
    }
    {
        nlohmann::json doc;
        doc["th"] = pick.th;
        doc["tpr"] = pick.point.tpr;
        doc["fpr"] = pick.point.fpr;
        doc["met_targets"] = pick.met_targets;
        std::ofstream js(outdir / "calibration.json", std::ios::trunc);
        if (!js) throw IoError(IoErrorKind::write_failure, "cannot write calibration.json");
        js << doc.dump(2) << '\n';
    }

    if (!pick.met_targets)
        std::cout << "WARN no threshold met tpr >= " << tpr_min << " with fpr < " << fpr_max
                  << "; best tradeoff follows\n";
    std::cout << "th " << pick.th << " tpr " << pick.point.tpr << " fpr " << pick.point.fpr
              << '\n';
    return kExitOk;
}

struct EvalSide {
    // Plain bytes, not vector<bool>: build_matrix wants a contiguous span.
    std::vector<std::uint8_t> detected;
    std::uint64_t excluded = 0;
    std::vector<double> ious;
};

std::unique_ptr<bool[]> to_bool_array(const std::vector<std::uint8_t>& v) {
    auto arr = std::make_unique<bool[]>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) arr[i] = v[i] != 0;
    return arr;
}

EvalSide evaluate_side(const Manifest& manifest, const ClassifierConfig& cfg, bool want_iou) {
    std::vector<BatchItem> items(manifest.entries.size());
    parallel_for(manifest.entries.size(), [&](std::size_t i) {
        const ManifestEntry& entry = manifest.entries[i];
        try {
            const RgbImage img = load_image(entry.path);
            const Detection det = segment(img, cfg);
            items[i] = {true, {}, det.fire_pixel_count, det.is_fire_image, std::nullopt};
            if (want_iou && entry.mask_path) {
                const RuleMask truth = load_mask(*entry.mask_path, img.width(), img.height());
                const RuleMask meet = det.fire_mask & truth;
                std::size_t join = det.fire_mask.population() + truth.population() -
                                   meet.population();
                items[i].iou = join == 0
                                   ? 1.0
                                   : static_cast<double>(meet.population()) /
                                         static_cast<double>(join);
            }
        } catch (const std::exception& e) {
            items[i].error = e.what();
        }
    });

    EvalSide side;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!items[i].ok) {
            ++side.excluded;
            std::cerr << manifest.entries[i].path.string() << " ERROR " << items[i].error << '\n';
            continue;
        }
        side.detected.push_back(items[i].is_fire ? 1 : 0);
        if (items[i].iou) side.ious.push_back(*items[i].iou);
    }
    return side;
}

int cmd_evaluate(const fs::path& fire_manifest, const fs::path& nofire_manifest,
                 const ClassifierConfig& cfg, const std::string& format, const fs::path& outdir) {
    const Manifest fire = load_manifest(fire_manifest);
    const Manifest nofire = load_manifest(nofire_manifest);

    const EvalSide fire_side = evaluate_side(fire, cfg, true);
    const EvalSide nofire_side = evaluate_side(nofire, cfg, false);

    const auto fire_bools = to_bool_array(fire_side.detected);
    const auto nofire_bools = to_bool_array(nofire_side.detected);
    const ErrorMatrix matrix =
        build_matrix({fire_bools.get(), fire_side.detected.size()},
                     {nofire_bools.get(), nofire_side.detected.size()});
    if (matrix.total() == 0) throw IoError(IoErrorKind::corrupt_data, "no decodable images");
    const EvalReport report = derive_report(matrix);

    ReportExtras extras;
    extras.excluded_fire = fire_side.excluded;
    extras.excluded_nofire = nofire_side.excluded;
    if (!fire_side.ious.empty()) {
        double sum = 0.0;
        for (double v : fire_side.ious) sum += v;
        extras.mean_fire_mask_iou = sum / static_cast<double>(fire_side.ious.size());
    }

    fs::create_directories(outdir);
    const fs::path report_path = outdir / (format == "json" ? "report.json" : "report.txt");
    const std::string rendered =
        format == "json" ? report_to_json(report, extras) : report_to_text(report, extras);
    {
        std::ofstream out(report_path, std::ios::trunc);
        if (!out) throw IoError(IoErrorKind::write_failure, "cannot write " + report_path.string());
        out << rendered;
    }

    std::ostringstream summary;
    summary << "overall_accuracy_pct " << report.overall_accuracy_pct << " kappa ";
    if (report.kappa)
        summary << *report.kappa << " (" << kappa_quality(*report.kappa) << ")";
    else
        summary << "undefined";
    std::cout << summary.str() << '\n';
    std::cout << "report written to " << report_path.string() << '\n';
    return kExitOk;
}

int cmd_make_fixtures(const fs::path& outdir) {
    const GeneratedFixtures result = generate_fixtures(outdir);
    std::cout << "fixtures written to " << result.dir.string() << '\n';
    std::cout << "fire manifest " << result.fire_manifest.string() << " ("
              << result.fire_images.size() << " images)\n";
    std::cout << "nofire manifest " << result.nofire_manifest.string() << " ("
              << result.nofire_images.size() << " images)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rule-based fire pixel segmentation toolkit"};
    app.require_subcommand(1);

    ClassifierConfig detect_cfg, segment_cfg, calibrate_cfg, evaluate_cfg;
    std::string detect_config, segment_config, calibrate_config, evaluate_config;

    auto* detect = app.add_subcommand("detect", "classify images as fire / no fire");
    std::vector<std::string> detect_inputs;
    std::string detect_dir, detect_manifest;
    bool fail_on_fire = false;
    detect->add_option("images", detect_inputs, "image files");
    detect->add_option("--dir", detect_dir, "classify every image in a directory");
    detect->add_option("--manifest", detect_manifest, "classify every image in a manifest");
    detect->add_flag("--fail-on-fire", fail_on_fire, "exit 3 when any image is fire");
    add_classifier_flags(detect, detect_cfg, detect_config);

    auto* segment_cmd = app.add_subcommand("segment", "write fire mask and overlay for one image");
    std::string segment_input, segment_out;
    bool per_rule = false;
    segment_cmd->add_option("image", segment_input, "image file")->required();
    segment_cmd->add_option("--out", segment_out, "output directory (default: beside the input)");
    segment_cmd->add_flag("--per-rule", per_rule, "also write one mask per rule");
    add_classifier_flags(segment_cmd, segment_cfg, segment_config);

    auto* calibrate = app.add_subcommand("calibrate", "sweep the rule-6 threshold on labeled sets");
    std::string cal_fire, cal_nofire, cal_out = ".";
    double tpr_min = 0.95, fpr_max = 0.30;
    calibrate->add_option("--fire", cal_fire, "manifest of fire images")->required();
    calibrate->add_option("--nofire", cal_nofire, "manifest of no-fire images")->required();
    calibrate->add_option("--tpr-min", tpr_min, "required true positive rate")
        ->capture_default_str();
    calibrate->add_option("--fpr-max", fpr_max, "false positive rate must stay below this")
        ->capture_default_str();
    calibrate->add_option("--out", cal_out, "output directory")->capture_default_str();
    add_classifier_flags(calibrate, calibrate_cfg, calibrate_config);

    auto* evaluate = app.add_subcommand("evaluate", "error matrix and accuracy on labeled sets");
    std::string eval_fire, eval_nofire, eval_out = ".", eval_format = "text";
    evaluate->add_option("--fire", eval_fire, "manifest of fire images")->required();
    evaluate->add_option("--nofire", eval_nofire, "manifest of no-fire images")->required();
    evaluate->add_option("--format", eval_format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    evaluate->add_option("--out", eval_out, "output directory")->capture_default_str();
    add_classifier_flags(evaluate, evaluate_cfg, evaluate_config);

    auto* make_fixtures = app.add_subcommand("make-fixtures", "generate the synthetic benchmark corpus");
    std::string fixtures_out = "fixtures";
    make_fixtures->add_option("outdir", fixtures_out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (detect->parsed()) {
            const int modes = (!detect_inputs.empty() ? 1 : 0) + (!detect_dir.empty() ? 1 : 0) +
                              (!detect_manifest.empty() ? 1 : 0);
            if (modes != 1) {
                std::cerr << "detect: give image files, --dir, or --manifest (exactly one)\n";
                return kExitUsage;
            }
            if (!detect_config.empty()) apply_config_file(*detect, detect_config, detect_cfg);
            detect_cfg.validate();
            std::vector<fs::path> paths;
            if (!detect_inputs.empty())
                paths.assign(detect_inputs.begin(), detect_inputs.end());
            else if (!detect_dir.empty())
                paths = list_directory_images(detect_dir);
            else
                for (const ManifestEntry& e : load_manifest(detect_manifest).entries)
                    paths.push_back(e.path);
            if (paths.empty()) {
                std::cerr << "detect: no input images\n";
                return kExitUsage;
            }
            return cmd_detect(paths, detect_cfg, fail_on_fire);
        }
        if (segment_cmd->parsed()) {
            if (!segment_config.empty())
                apply_config_file(*segment_cmd, segment_config, segment_cfg);
            segment_cfg.validate();
            std::optional<fs::path> outdir;
            if (!segment_out.empty()) outdir = segment_out;
            return cmd_segment(segment_input, segment_cfg, per_rule, outdir);
        }
        if (calibrate->parsed()) {
            if (!calibrate_config.empty())
                apply_config_file(*calibrate, calibrate_config, calibrate_cfg);
            calibrate_cfg.validate();
            if (tpr_min < 0.0 || tpr_min > 1.0 || fpr_max <= 0.0 || fpr_max > 1.0) {
                std::cerr << "calibrate: rate targets must lie in [0, 1]\n";
                return kExitUsage;
            }
            return cmd_calibrate(cal_fire, cal_nofire, calibrate_cfg, tpr_min, fpr_max, cal_out);
        }
        if (evaluate->parsed()) {
            if (!evaluate_config.empty())
                apply_config_file(*evaluate, evaluate_config, evaluate_cfg);
            evaluate_cfg.validate();
            return cmd_evaluate(eval_fire, eval_nofire, evaluate_cfg, eval_format, eval_out);
        }
        if (make_fixtures->parsed()) return cmd_make_fixtures(fixtures_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
