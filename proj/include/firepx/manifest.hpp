#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace firepx {

enum class Label { fire, nofire };

std::string_view to_string(Label label) noexcept;

struct ManifestEntry {
    std::filesystem::path path;
    Label label = Label::nofire;
    std::optional<std::filesystem::path> mask_path;
};

/// Labeled image listing. Relative paths are resolved against the
/// manifest's own directory.
struct Manifest {
    std::vector<ManifestEntry> entries;
};

class ManifestError : public std::runtime_error {
public:
    ManifestError(int line, const std::string& message)
        : std::runtime_error(message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Parses one `path,label[,mask_path]` entry per line. Lines whose first
/// non-blank character is '#' are comments; blank lines are skipped.
/// Malformed lines, unknown labels, and duplicate paths raise ManifestError
/// with the offending line number.
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace firepx
