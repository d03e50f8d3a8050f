#include <cstdint>

#include <doctest.h>

#include "firepx/rules.hpp"
#include "rule_oracle.hpp"

using namespace firepx;

namespace {

const ClassifierConfig kDefaults{};

RgbImage block_fixture() {
    // 10x10 warm block on a dark blue background; background pixels fail
    // the channel-order rule, block pixels pass all seven.
    RgbImage img(32, 32);
    for (auto& p : img.pixels()) p = {0, 0, 60};
    for (int y = 11; y < 21; ++y)
        for (int x = 11; x < 21; ++x) img.at(x, y) = {255, 180, 20};
    return img;
}

}  // namespace

TEST_CASE("rule mask basics") {
    RuleMask m(3, 2);
    CHECK(m.population() == 0);
    m.set(2, 1, true);
    m.set(0, 0, true);
    CHECK(m.get(2, 1));
    CHECK(m.population() == 2);

    RuleMask full(3, 2, true);
    CHECK(full.population() == 6);
    CHECK((m & full) == m);
    CHECK((m & RuleMask(3, 2)).population() == 0);

    CHECK_THROWS_AS(RuleMask(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(m & RuleMask(2, 3), std::invalid_argument);
}

TEST_CASE("rule 1: strict channel ordering") {
    CHECK(rule1({252, 210, 83}));
    CHECK_FALSE(rule1({100, 100, 99}));
    CHECK_FALSE(rule1({83, 210, 252}));
}

TEST_CASE("rule 2: band bounds are strict") {
    CHECK(rule2({252, 210, 83}, kDefaults));
    CHECK_FALSE(rule2({190, 101, 0}, kDefaults));
    CHECK_FALSE(rule2({191, 101, 140}, kDefaults));
    ClassifierConfig loose;
    loose.rule2_r_min = 180;
    CHECK(rule2({181, 101, 0}, loose));
}

TEST_CASE("rule 3: luma at least blue chroma, inclusive") {
    CHECK(rule3({130.0, 106.0, 153.0}));
    CHECK(rule3({128.0, 128.0, 128.0}));
    CHECK_FALSE(rule3({48.0, 158.0, 100.0}));
}

TEST_CASE("rule 4: red chroma at least blue chroma, inclusive") {
    CHECK(rule4({189.3, 48.1, 158.2}));
    CHECK(rule4({50.0, 128.0, 128.0}));
    CHECK_FALSE(rule4({50.0, 240.0, 16.0}));
}

TEST_CASE("rule 5: compares against the image means, inclusive") {
    const ChannelMeans means{150.0, 120.0, 140.0};
    CHECK(rule5({200.0, 100.0, 160.0}, means));
    CHECK_FALSE(rule5({100.0, 100.0, 160.0}, means));
    CHECK(rule5({150.0, 120.0, 140.0}, means));  // all three at equality
}

TEST_CASE("rule 6: absolute chroma gap, inclusive") {
    CHECK(rule6({0.0, 48.1, 158.2}, kDefaults));
    CHECK_FALSE(rule6({0.0, 128.0, 128.0}, kDefaults));
    CHECK(rule6({0.0, 100.0, 170.0}, kDefaults));  // gap exactly 70
    ClassifierConfig one;
    one.rule6_th = 1.0;
    CHECK_FALSE(rule6({0.0, 128.0, 128.0}, one));
}

TEST_CASE("rule 7: chroma band, inclusive at both bounds") {
    CHECK(rule7({130.0, 106.0, 153.0}, kDefaults));
    CHECK(rule7({0.0, 120.0, 150.0}, kDefaults));
    CHECK_FALSE(rule7({0.0, 121.0, 150.0}, kDefaults));
    CHECK_FALSE(rule7({0.0, 120.0, 149.0}, kDefaults));
}

TEST_CASE("classify_pixel is the conjunction of the individual rules") {
    for (std::uint32_t seed = 0; seed < 200; ++seed) {
        const std::uint8_t r = static_cast<std::uint8_t>(seed * 37 % 256);
        const std::uint8_t g = static_cast<std::uint8_t>(seed * 89 % 256);
        const std::uint8_t b = static_cast<std::uint8_t>(seed * 173 % 256);
        const PixelRgb rgb{r, g, b};
        const PixelYcbcr ycc = rgb_to_ycbcr(rgb);
        const ChannelMeans means{120.0, 110.0, 150.0};
        const bool want = rule1(rgb) && rule2(rgb, kDefaults) && rule3(ycc) && rule4(ycc) &&
                          rule5(ycc, means) && rule6(ycc, kDefaults) && rule7(ycc, kDefaults);
        CHECK(classify_pixel(rgb, ycc, means, kDefaults) == want);
    }
}

TEST_CASE("classify_pixel honors the enabled-rule subset") {
    const PixelRgb p{200, 150, 100};
    const PixelYcbcr ycc = rgb_to_ycbcr(p);
    const ChannelMeans means{200.0, 200.0, 200.0};  // rule 5 would fail

    ClassifierConfig only_rule1;
    only_rule1.enabled_rules = 0x01;
    CHECK(classify_pixel(p, ycc, means, only_rule1));
    CHECK_FALSE(classify_pixel(p, ycc, means, kDefaults));

    // Blue above red: the ordering rule alone sinks it.
    const PixelRgb bluish{100, 50, 200};
    CHECK_FALSE(classify_pixel(bluish, rgb_to_ycbcr(bluish), means, only_rule1));
}

TEST_CASE("config validation rejects out-of-range values") {
    ClassifierConfig bad = kDefaults;
    bad.rule2_r_min = 256;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kDefaults;
    bad.rule6_th = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kDefaults;
    bad.min_fire_pixels = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kDefaults;
    bad.enabled_rules = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kDefaults;
    bad.enabled_rules = 0x80;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(kDefaults.validate());
}

TEST_CASE("segment on an all-black image finds nothing") {
    RgbImage img(16, 16);
    const Detection det = segment(img, kDefaults);
    CHECK(det.fire_pixel_count == 0);
    CHECK_FALSE(det.is_fire_image);
    CHECK(det.fire_mask.population() == 0);
    CHECK_FALSE(det.per_rule_masks.has_value());
}

TEST_CASE("segment finds exactly the warm block") {
    const RgbImage img = block_fixture();
    const Detection det = segment(img, kDefaults);
    CHECK(det.fire_pixel_count == 100);
    CHECK(det.is_fire_image);
    CHECK(det.fire_mask.population() == det.fire_pixel_count);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
            CHECK(det.fire_mask.get(x, y) == (x >= 11 && x < 21 && y >= 11 && y < 21));

    ClassifierConfig strict = kDefaults;
    strict.min_fire_pixels = 101;
    CHECK_FALSE(segment(img, strict).is_fire_image);
    strict.min_fire_pixels = 100;
    CHECK(segment(img, strict).is_fire_image);
}

TEST_CASE("per-rule masks AND together into the combined mask") {
    const RgbImage img = block_fixture();
    const Detection det = segment(img, kDefaults, true);
    REQUIRE(det.per_rule_masks.has_value());

    RuleMask conj(img.width(), img.height(), true);
    for (int rule = 1; rule <= 7; ++rule) conj = conj & (*det.per_rule_masks)[rule - 1];
    CHECK(conj == det.fire_mask);

    // Same identity on random content, including a thinned rule subset.
    for (std::uint32_t seed = 100; seed < 110; ++seed) {
        const RgbImage rand_img = ruleref::random_image(seed, 24);
        ClassifierConfig cfg = kDefaults;
        if (seed % 2 == 0) cfg.enabled_rules = 0x2B;  // rules 1, 2, 4, 6
        const Detection d = segment(rand_img, cfg, true);
        RuleMask want(rand_img.width(), rand_img.height(), true);
        for (int rule = 1; rule <= 7; ++rule)
            if (cfg.rule_enabled(rule)) want = want & (*d.per_rule_masks)[rule - 1];
        CHECK(want == d.fire_mask);
        for (int y = 0; y < rand_img.height(); ++y)
            for (int x = 0; x < rand_img.width(); ++x)
                if (d.fire_mask.get(x, y))
                    for (int rule = 1; rule <= 7; ++rule)
                        if (cfg.rule_enabled(rule)) CHECK((*d.per_rule_masks)[rule - 1].get(x, y));
    }
}

TEST_CASE("enabling more rules never grows the fire region") {
    for (std::uint32_t seed = 20; seed < 40; ++seed) {
        const RgbImage img = ruleref::random_image(seed, 20);
        ClassifierConfig cfg = kDefaults;
        std::size_t prev = img.pixel_count() + 1;
        for (std::uint8_t upto = 1; upto <= 7; ++upto) {
            cfg.enabled_rules = static_cast<std::uint8_t>((1u << upto) - 1u);
            const std::size_t count = segment(img, cfg).fire_pixel_count;
            CHECK(count <= prev);
            prev = count;
        }
    }
}

TEST_CASE("decision is monotone in the pixel floor and the gap threshold") {
    const RgbImage img = block_fixture();
    bool prev_fire = true;
    for (std::size_t floor = 1; floor <= 120; floor += 7) {
        ClassifierConfig cfg = kDefaults;
        cfg.min_fire_pixels = floor;
        const bool fire = segment(img, cfg).is_fire_image;
        CHECK((prev_fire || !fire));  // once off, stays off
        prev_fire = fire;
    }

    std::size_t prev_count = img.pixel_count() + 1;
    for (double th = 1.0; th <= 160.0; th += 8.0) {
        ClassifierConfig cfg = kDefaults;
        cfg.rule6_th = th;
        const std::size_t count = segment(img, cfg).fire_pixel_count;
        CHECK(count <= prev_count);
        prev_count = count;
    }
}

TEST_CASE("segment matches the scalar reference on random images") {
    for (std::uint32_t seed = 0; seed < 200; ++seed) {
        const RgbImage img = ruleref::random_image(seed, 32);
        ClassifierConfig cfg = kDefaults;
        if (seed % 3 == 1) cfg.rule6_th = static_cast<double>(1 + seed % 100);
        if (seed % 5 == 2) cfg.min_fire_pixels = 1 + seed % 20;
        const Detection det = segment(img, cfg);
        const ruleref::Result want = ruleref::classify(img, cfg);
        REQUIRE(ruleref::masks_equal(det.fire_mask, want));
        CHECK(det.fire_pixel_count == want.fire_pixels);
        CHECK(det.is_fire_image == want.fire_image);
    }
}

TEST_CASE("segment is deterministic across repeated runs") {
    const RgbImage img = ruleref::random_image(77, 28);
    const Detection first = segment(img, kDefaults, true);
    const Detection second = segment(img, kDefaults, true);
    CHECK(first.fire_mask == second.fire_mask);
    CHECK(*first.per_rule_masks == *second.per_rule_masks);
    CHECK(first.fire_pixel_count == second.fire_pixel_count);
}

TEST_CASE("segment_converted validates dimensions") {
    const RgbImage img = block_fixture();
    const YcbcrImage wrong(8, 8);
    CHECK_THROWS_AS(segment_converted(img, wrong, ChannelMeans{}, kDefaults),
                    std::invalid_argument);
}
