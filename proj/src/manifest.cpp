#include "firepx/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace firepx {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string_view to_string(Label label) noexcept {
    return label == Label::fire ? "fire" : "nofire";
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError(0, "cannot open manifest: " + path.string());

    const std::filesystem::path base = path.parent_path();
    Manifest manifest;
    std::unordered_set<std::string> seen;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ss(stripped);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        if (fields.size() < 2 || fields.size() > 3)
            throw ManifestError(line_no, "expected `path,label[,mask_path]` at line " +
                                             std::to_string(line_no));
        if (fields[0].empty())
            throw ManifestError(line_no, "empty image path at line " + std::to_string(line_no));

        ManifestEntry entry;
        if (fields[1] == "fire")
            entry.label = Label::fire;
        else if (fields[1] == "nofire")
            entry.label = Label::nofire;
        else
            throw ManifestError(line_no, "unknown label `" + fields[1] + "` at line " +
                                             std::to_string(line_no));

        std::filesystem::path img(fields[0]);
        if (img.is_relative()) img = base / img;
        entry.path = img.lexically_normal();

        if (fields.size() == 3 && !fields[2].empty()) {
            std::filesystem::path mask(fields[2]);
            if (mask.is_relative()) mask = base / mask;
            entry.mask_path = mask.lexically_normal();
        }

        if (!seen.insert(entry.path.string()).second)
            throw ManifestError(line_no, "duplicate image path `" + entry.path.string() +
                                             "` at line " + std::to_string(line_no));
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

}  // namespace firepx
