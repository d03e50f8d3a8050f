#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "firepx/mask.hpp"

namespace firepx {

/// One pixel in the 8-bit RGB cube.
struct PixelRgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const PixelRgb&, const PixelRgb&) = default;
};

/// One pixel in studio-swing YCbCr, kept real-valued (never quantized).
/// Conversion from valid 8-bit RGB always lands in Y [16, 235],
/// Cb [16, 240], Cr [16, 240].
struct PixelYcbcr {
    double y = 0.0;
    double cb = 0.0;
    double cr = 0.0;

    friend bool operator==(const PixelYcbcr&, const PixelYcbcr&) = default;
};

/// Row-major pixel raster. Both dimensions are at least 1 except for the
/// default-constructed 0x0 placeholder.
template <typename P>
class ImageBuffer {
public:
    ImageBuffer() : width_(0), height_(0) {}

    ImageBuffer(int width, int height) : width_(width), height_(height) {
        check_dims(width, height);
        pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    }

    ImageBuffer(int width, int height, std::vector<P> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        check_dims(width, height);
        if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
            throw std::invalid_argument("ImageBuffer: pixel count does not match dimensions");
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return pixels_.size(); }

    P& at(int x, int y) { return pixels_[index(x, y)]; }
    const P& at(int x, int y) const { return pixels_[index(x, y)]; }

    std::span<P> pixels() noexcept { return pixels_; }
    std::span<const P> pixels() const noexcept { return pixels_; }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    static void check_dims(int width, int height) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("ImageBuffer: dimensions must be at least 1x1");
    }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<P> pixels_;
};

using RgbImage = ImageBuffer<PixelRgb>;
using YcbcrImage = ImageBuffer<PixelYcbcr>;

/// Arithmetic means of the Y, Cb, Cr channels over an image or region.
struct ChannelMeans {
    double y = 0.0;
    double cb = 0.0;
    double cr = 0.0;
};

/// Arithmetic means of the R, G, B channels over a region.
struct RgbMeans {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

/// Converts one pixel with the fixed four-decimal transform matrix plus
/// the (16, 128, 128) offsets. Result stays real-valued.
PixelYcbcr rgb_to_ycbcr(PixelRgb p) noexcept;

/// Pixel-wise conversion; dimensions preserved.
YcbcrImage convert_image(const RgbImage& img);

/// Per-image channel means over all pixels.
ChannelMeans channel_means(const YcbcrImage& img);

/// Per-channel means restricted to mask-selected pixels. The mask must
/// match the image dimensions and select at least one pixel.
RgbMeans region_stats(const RgbImage& img, const RuleMask& mask);
ChannelMeans region_stats(const YcbcrImage& img, const RuleMask& mask);

enum class RgbChannel { r, g, b };
enum class YccChannel { y, cb, cr };

using Histogram = std::array<std::uint64_t, 256>;

/// 256-bin counts over the masked pixels of one channel. YCbCr values are
/// rounded to the nearest integer and clamped to [0, 255] before binning.
/// An empty mask yields an all-zero histogram.
Histogram region_histogram(const RgbImage& img, const RuleMask& mask, RgbChannel channel);
Histogram region_histogram(const YcbcrImage& img, const RuleMask& mask, YccChannel channel);

}  // namespace firepx
