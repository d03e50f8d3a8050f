#include "firepx/color.hpp"

#include <cmath>

namespace firepx {

namespace {

// Studio-swing transform at the four-decimal precision used everywhere in
// this project; downstream thresholds assume exactly these coefficients.
constexpr double kYR = 0.2568, kYG = 0.5041, kYB = 0.0979;
constexpr double kCbR = -0.1482, kCbG = -0.2910, kCbB = 0.4392;
constexpr double kCrR = 0.4392, kCrG = -0.3678, kCrB = -0.0714;

constexpr double kLumaOffset = 16.0;
constexpr double kChromaOffset = 128.0;

void check_mask_dims(int width, int height, const RuleMask& mask, const char* op) {
    if (mask.width() != width || mask.height() != height)
        throw std::invalid_argument(std::string(op) + ": mask dimensions do not match image");
}

int histogram_bin(double value) {
    long k = std::lround(value);
    if (k < 0) k = 0;
    if (k > 255) k = 255;
    return static_cast<int>(k);
}

}  // namespace

PixelYcbcr rgb_to_ycbcr(PixelRgb p) noexcept {
    const double r = p.r;
    const double g = p.g;
    const double b = p.b;
    return {
        kYR * r + kYG * g + kYB * b + kLumaOffset,
        kCbR * r + kCbG * g + kCbB * b + kChromaOffset,
        kCrR * r + kCrG * g + kCrB * b + kChromaOffset,
    };
}

YcbcrImage convert_image(const RgbImage& img) {
    YcbcrImage out(img.width(), img.height());
    const auto src = img.pixels();
    const auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = rgb_to_ycbcr(src[i]);
    return out;
}

ChannelMeans channel_means(const YcbcrImage& img) {
    double sum_y = 0.0, sum_cb = 0.0, sum_cr = 0.0;
    for (const PixelYcbcr& p : img.pixels()) {
        sum_y += p.y;
        sum_cb += p.cb;
        sum_cr += p.cr;
    }
    const double n = static_cast<double>(img.pixel_count());
    return {sum_y / n, sum_cb / n, sum_cr / n};
}

RgbMeans region_stats(const RgbImage& img, const RuleMask& mask) {
    check_mask_dims(img.width(), img.height(), mask, "region_stats");
    double sum_r = 0.0, sum_g = 0.0, sum_b = 0.0;
    std::size_t count = 0;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (!mask.get(x, y)) continue;
            const PixelRgb& p = img.at(x, y);
            sum_r += p.r;
            sum_g += p.g;
            sum_b += p.b;
            ++count;
        }
    }
    if (count == 0) throw std::invalid_argument("region_stats: mask selects no region");
    const double n = static_cast<double>(count);
    return {sum_r / n, sum_g / n, sum_b / n};
}

ChannelMeans region_stats(const YcbcrImage& img, const RuleMask& mask) {
    check_mask_dims(img.width(), img.height(), mask, "region_stats");
    double sum_y = 0.0, sum_cb = 0.0, sum_cr = 0.0;
    std::size_t count = 0;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (!mask.get(x, y)) continue;
            const PixelYcbcr& p = img.at(x, y);
            sum_y += p.y;
            sum_cb += p.cb;
            sum_cr += p.cr;
            ++count;
        }
    }
    if (count == 0) throw std::invalid_argument("region_stats: mask selects no region");
    const double n = static_cast<double>(count);
    return {sum_y / n, sum_cb / n, sum_cr / n};
}

Histogram region_histogram(const RgbImage& img, const RuleMask& mask, RgbChannel channel) {
    check_mask_dims(img.width(), img.height(), mask, "region_histogram");
    Histogram hist{};
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (!mask.get(x, y)) continue;
            const PixelRgb& p = img.at(x, y);
            const std::uint8_t v = channel == RgbChannel::r ? p.r : channel == RgbChannel::g ? p.g : p.b;
            ++hist[v];
        }
    }
    return hist;
}

Histogram region_histogram(const YcbcrImage& img, const RuleMask& mask, YccChannel channel) {
    check_mask_dims(img.width(), img.height(), mask, "region_histogram");
    Histogram hist{};
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (!mask.get(x, y)) continue;
            const PixelYcbcr& p = img.at(x, y);
            const double v = channel == YccChannel::y ? p.y : channel == YccChannel::cb ? p.cb : p.cr;
            ++hist[histogram_bin(v)];
        }
    }
    return hist;
}

}  // namespace firepx
