#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace firepx {

/// Binary per-pixel mask, row-major, dimensioned like its source image.
class RuleMask {
public:
    RuleMask() = default;  // 0x0 placeholder, used before assignment
    RuleMask(int width, int height, bool value = false)
        : width_(width),
          height_(height),
          bits_(checked_size(width, height), value ? 1 : 0) {}

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    bool get(int x, int y) const { return bits_[index(x, y)] != 0; }
    void set(int x, int y, bool value) { bits_[index(x, y)] = value ? 1 : 0; }

    /// Number of set pixels.
    std::size_t population() const noexcept {
        return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
    }

    friend bool operator==(const RuleMask&, const RuleMask&) = default;

    /// Pixel-wise conjunction; dimensions must match.
    friend RuleMask operator&(const RuleMask& a, const RuleMask& b) {
        if (a.width_ != b.width_ || a.height_ != b.height_)
            throw std::invalid_argument("RuleMask: conjunction of masks with different dimensions");
        RuleMask out = a;
        for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] &= b.bits_[i];
        return out;
    }

private:
    static std::size_t checked_size(int width, int height) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("RuleMask: dimensions must be at least 1x1");
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

}  // namespace firepx
