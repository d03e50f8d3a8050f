#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "firepx/color.hpp"
#include "firepx/mask.hpp"

namespace firepx {

enum class IoErrorKind {
    missing_file,
    unsupported_format,
    corrupt_data,
    dimension_mismatch,
    write_failure,
};

class IoError : public std::runtime_error {
public:
    IoError(IoErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    IoErrorKind kind() const noexcept { return kind_; }

private:
    IoErrorKind kind_;
};

/// Decodes a PNG or JPEG file into 8-bit RGB. Grayscale expands to three
/// equal channels, alpha is dropped, and 16-bit PNG samples keep their high
/// byte. Missing file, unsupported format, and corrupt data raise distinct
/// IoError kinds, each naming the path.
RgbImage load_image(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG.
void save_image(const RgbImage& img, const std::filesystem::path& path);

/// Writes a mask as a single-channel 8-bit PNG holding 0 or 255.
void write_mask(const RuleMask& mask, const std::filesystem::path& path);

/// Reads a mask image; any nonzero pixel reads as set. The decoded
/// dimensions must equal the expectation.
RuleMask load_mask(const std::filesystem::path& path, int expected_width, int expected_height);

/// Returns a copy of the image with masked pixels painted pure green
/// (0, 255, 0). Dimensions must match.
RgbImage render_overlay(const RgbImage& img, const RuleMask& mask);

}  // namespace firepx
