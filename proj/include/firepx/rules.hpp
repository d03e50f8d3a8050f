#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "firepx/color.hpp"
#include "firepx/mask.hpp"

namespace firepx {

/// Tunable constants of the classifier. The defaults are the standard
/// operating point; calibration replaces rule6_th.
struct ClassifierConfig {
    int rule2_r_min = 190;
    int rule2_g_min = 100;
    int rule2_b_max = 140;
    double rule6_th = 70.0;
    int rule7_cb_max = 120;
    int rule7_cr_min = 150;

    /// An image counts as fire when at least this many pixels classify as fire.
    std::size_t min_fire_pixels = 10;

    /// Bit i-1 enables rule i; all seven by default.
    std::uint8_t enabled_rules = kAllRules;

    static constexpr std::uint8_t kAllRules = 0x7F;

    bool rule_enabled(int rule) const noexcept { return (enabled_rules >> (rule - 1)) & 1u; }

    /// Throws std::invalid_argument when a threshold leaves [0, 255] or
    /// min_fire_pixels is zero.
    void validate() const;
};

/// Image-level classification result.
struct Detection {
    RuleMask fire_mask;
    std::size_t fire_pixel_count = 0;
    bool is_fire_image = false;
    /// Mask of each rule alone (index i holds rule i+1), filled on request.
    std::optional<std::array<RuleMask, 7>> per_rule_masks;
};

bool rule1(PixelRgb p) noexcept;                                   // R > G > B
bool rule2(PixelRgb p, const ClassifierConfig& cfg) noexcept;      // per-channel RGB bounds
bool rule3(const PixelYcbcr& p) noexcept;                          // Y >= Cb
bool rule4(const PixelYcbcr& p) noexcept;                          // Cr >= Cb
bool rule5(const PixelYcbcr& p, const ChannelMeans& means) noexcept;  // brighter, bluer-low, redder-high than the image means
bool rule6(const PixelYcbcr& p, const ClassifierConfig& cfg) noexcept;  // |Cb - Cr| >= Th
bool rule7(const PixelYcbcr& p, const ClassifierConfig& cfg) noexcept;  // Cb/Cr bounds

/// Conjunction of the enabled rules for one pixel. ycc must be the
/// conversion of rgb; means must come from the enclosing image.
bool classify_pixel(PixelRgb rgb, const PixelYcbcr& ycc, const ChannelMeans& means,
                    const ClassifierConfig& cfg) noexcept;

/// Two-pass segmentation: convert, take channel means, then classify every
/// pixel. per_rule_masks is filled only when emit_per_rule is set.
Detection segment(const RgbImage& img, const ClassifierConfig& cfg, bool emit_per_rule = false);

/// Segmentation over an already-converted copy of img; means must have been
/// computed from that same converted image.
Detection segment_converted(const RgbImage& rgb, const YcbcrImage& ycc, const ChannelMeans& means,
                            const ClassifierConfig& cfg, bool emit_per_rule = false);

}  // namespace firepx
