#include "firepx/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <string>

#include "firepx/image_io.hpp"
#include "firepx/manifest.hpp"

namespace firepx {

namespace {

// Portable jitter in [-amp, amp]; std::uniform_int_distribution is avoided
// so the byte stream depends only on mt19937.
int jitter(std::mt19937& rng, int amp) {
    if (amp <= 0) return 0;
    return static_cast<int>(rng() % (2u * amp + 1u)) - amp;
}

PixelRgb noisy(PixelRgb base, int amp, std::mt19937& rng) {
    const int r = std::clamp(static_cast<int>(base.r) + jitter(rng, amp), 0, 255);
    const int g = std::clamp(static_cast<int>(base.g) + jitter(rng, amp), 0, 255);
    const int b = std::clamp(static_cast<int>(base.b) + jitter(rng, amp), 0, 255);
    return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
            static_cast<std::uint8_t>(b)};
}

struct Canvas {
    RgbImage image;
    RuleMask mask;

    Canvas(int w, int h, PixelRgb bg, int amp, std::mt19937& rng)
        : image(w, h), mask(w, h) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) image.at(x, y) = noisy(bg, amp, rng);
    }

    void rect(int x0, int y0, int w, int h, PixelRgb color, int amp, std::mt19937& rng) {
        for (int y = y0; y < y0 + h; ++y) {
            for (int x = x0; x < x0 + w; ++x) {
                image.at(x, y) = noisy(color, amp, rng);
                mask.set(x, y, true);
            }
        }
    }

    void disk(int cx, int cy, int r, PixelRgb color, int amp, std::mt19937& rng) {
        for (int y = 0; y < image.height(); ++y) {
            for (int x = 0; x < image.width(); ++x) {
                const int dx = x - cx, dy = y - cy;
                if (dx * dx + dy * dy > r * r) continue;
                image.at(x, y) = noisy(color, amp, rng);
                mask.set(x, y, true);
            }
        }
    }
};

struct FixtureRecipe {
    std::string name;
    Label label;
    bool with_mask;
    Canvas canvas;
};

}  // namespace

GeneratedFixtures generate_fixtures(const std::filesystem::path& outdir) {
    namespace fs = std::filesystem;
    const fs::path images_dir = outdir / "images";
    const fs::path masks_dir = outdir / "masks";
    fs::create_directories(images_dir);
    fs::create_directories(masks_dir);

    // Base colors: fire shapes pass every rule with margin to spare at the
    // default thresholds; distractors each decisively fail at least one.
    const PixelRgb dark_blue{20, 30, 60};
    const PixelRgb flame{250, 180, 20};

    std::vector<FixtureRecipe> recipes;
    auto add = [&recipes](std::string name, Label label, bool with_mask, Canvas canvas) {
        recipes.push_back({std::move(name), label, with_mask, std::move(canvas)});
    };

    int seed = 1000;
    auto fresh = [&seed] { return std::mt19937(static_cast<std::uint32_t>(seed++)); };

    {
        auto rng = fresh();
        Canvas c(32, 32, dark_blue, 2, rng);
        c.rect(11, 11, 10, 10, flame, 2, rng);
        add("fire_block100", Label::fire, true, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(32, 32, dark_blue, 2, rng);
        c.rect(14, 15, 5, 2, flame, 2, rng);
        add("fire_block10", Label::fire, true, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(48, 48, {15, 25, 50}, 2, rng);
        c.disk(24, 24, 7, {250, 160, 30}, 2, rng);
        add("blob_small", Label::fire, true, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(48, 48, {25, 35, 70}, 2, rng);
        c.disk(20, 26, 9, {230, 150, 40}, 2, rng);
        add("blob_medium", Label::fire, true, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(56, 40, {10, 20, 40}, 2, rng);
        c.disk(28, 20, 11, {252, 210, 83}, 2, rng);
        add("blob_large", Label::fire, true, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(64, 48, dark_blue, 2, rng);
        c.disk(18, 24, 6, {250, 160, 30}, 2, rng);
        c.disk(46, 20, 8, {230, 150, 40}, 2, rng);
        add("two_blobs", Label::fire, true, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(48, 48, {30, 40, 80}, 2, rng);
        c.disk(24, 22, 8, {200, 120, 30}, 2, rng);
        add("dim_blob", Label::fire, true, std::move(c));
    }

    {
        // Bright warm disk on sky; its blue channel stays well above the
        // fire band, so it can never satisfy the RGB band test.
        auto rng = fresh();
        Canvas c(64, 48, {120, 170, 230}, 2, rng);
        c.disk(32, 18, 9, {255, 230, 170}, 2, rng);
        add("sun", Label::nofire, false, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(48, 48, {40, 110, 45}, 2, rng);
        c.disk(24, 24, 8, {220, 90, 160}, 2, rng);
        add("flower", Label::nofire, false, std::move(c));
    }
    {
        // Warm foliage tone: fire-like in RGB but with a modest chroma gap,
        // so only a low gap threshold flags it.
        auto rng = fresh();
        Canvas c(48, 48, {35, 30, 40}, 2, rng);
        c.disk(24, 24, 6, {205, 130, 95}, 2, rng);
        add("autumn", Label::nofire, false, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(48, 48, {60, 70, 90}, 2, rng);
        c.rect(10, 14, 20, 12, {195, 140, 110}, 2, rng);
        add("brick", Label::nofire, false, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(56, 40, {40, 120, 50}, 2, rng);
        c.rect(8, 24, 40, 10, {70, 50, 35}, 2, rng);
        add("forest", Label::nofire, false, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(40, 40, {8, 10, 14}, 1, rng);
        add("night", Label::nofire, false, std::move(c));
    }
    {
        // One flame-colored pixel short of the detection floor.
        auto rng = fresh();
        Canvas c(32, 32, dark_blue, 2, rng);
        c.rect(14, 14, 3, 3, flame, 2, rng);
        add("block9", Label::nofire, false, std::move(c));
    }
    {
        auto rng = fresh();
        Canvas c(40, 40, {128, 128, 128}, 1, rng);
        add("gray", Label::nofire, false, std::move(c));
    }

    GeneratedFixtures out;
    out.dir = outdir;
    out.fire_manifest = outdir / "fire.csv";
    out.nofire_manifest = outdir / "nofire.csv";

    std::ofstream fire_csv(out.fire_manifest, std::ios::trunc);
    std::ofstream nofire_csv(out.nofire_manifest, std::ios::trunc);
    fire_csv << "# generated fixture corpus: fire\n";
    nofire_csv << "# generated fixture corpus: no fire\n";

    for (const FixtureRecipe& recipe : recipes) {
        const fs::path img_path = images_dir / (recipe.name + ".png");
        save_image(recipe.canvas.image, img_path);
        std::string line = "images/" + recipe.name + ".png," + std::string(to_string(recipe.label));
        if (recipe.with_mask) {
            const fs::path mask_path = masks_dir / (recipe.name + ".mask.png");
            write_mask(recipe.canvas.mask, mask_path);
            line += ",masks/" + recipe.name + ".mask.png";
        }
        if (recipe.label == Label::fire) {
            fire_csv << line << '\n';
            out.fire_images.push_back(img_path);
        } else {
            nofire_csv << line << '\n';
            out.nofire_images.push_back(img_path);
        }
    }
    return out;
}

}  // namespace firepx
