#pragma once

#include <filesystem>
#include <vector>

namespace firepx {

/// Paths produced by generate_fixtures.
struct GeneratedFixtures {
    std::filesystem::path dir;
    std::filesystem::path fire_manifest;
    std::filesystem::path nofire_manifest;
    std::vector<std::filesystem::path> fire_images;
    std::vector<std::filesystem::path> nofire_images;
};

/// Writes the synthetic benchmark corpus under outdir: fire-colored blobs
/// with ground-truth masks, plus fire-like distractors (sun disk, flowers,
/// reddish objects) and plain scenery. Fixed-seed generation: repeated runs
/// produce byte-identical files. The fire set is separable from the no-fire
/// set under the default configuration.
GeneratedFixtures generate_fixtures(const std::filesystem::path& outdir);

}  // namespace firepx
