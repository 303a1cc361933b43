#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hlc/core.hpp"

namespace hlc::bench {

/// Binary PPM (P6). maxval 255 gives an 8-bit frame, 1023 a 10-bit frame.
[[nodiscard]] Frame decode_ppm(std::span<const std::uint8_t> bytes);
[[nodiscard]] std::vector<std::uint8_t> encode_ppm(const Frame& frame);

/// PPM or PNG, chosen by content. 8-bit PNG maps to 8-bit frames; 16-bit
/// PNG maps to 10-bit by dropping the six low bits. With `to_ycbcr` the RGB
/// samples are converted to BT.709 full-range YCbCr.
[[nodiscard]] Frame load_image(const std::filesystem::path& path, bool to_ycbcr = false);

/// Writes PPM unless the extension is .png. 10-bit frames become 16-bit PNG
/// (sample << 6). With `from_ycbcr` the frame is converted back to RGB first.
void store_image(const Frame& frame, const std::filesystem::path& path, bool from_ycbcr = false);

}  // namespace hlc::bench
