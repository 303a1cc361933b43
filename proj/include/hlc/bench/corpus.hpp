#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hlc/core.hpp"

namespace hlc::bench {

struct CorpusImage {
  std::string name;
  Frame frame;
};

enum class ImageKind { kText, kGradient, kNoise, kNatural, kMixed };

/// Deterministic synthetic content. kText renders glyph-like strokes in two
/// to four colors on flat backgrounds, with optional one-step antialiasing.
[[nodiscard]] Frame make_image(ImageKind kind, int width, int height, std::uint32_t seed, int bit_depth = 8);

/// The repository test corpus: 24 images covering every kind.
[[nodiscard]] std::vector<CorpusImage> test_corpus(int width = 256, int height = 256);

[[nodiscard]] std::vector<CorpusImage> text_corpus(int count, int width, int height, std::uint32_t seed);

/// Every *.ppm / *.png under `dir`, sorted by file name. Unreadable files are
/// skipped with a warning on stderr.
[[nodiscard]] std::vector<CorpusImage> load_corpus(const std::filesystem::path& dir, bool to_ycbcr = false);

}  // namespace hlc::bench
