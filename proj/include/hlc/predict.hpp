#pragma once

#include <array>
#include <cstdint>

#include "hlc/core.hpp"
#include "hlc/mode.hpp"

namespace hlc::predict {

/// Signed 16x4x3 block: residuals, transform coefficients, or quantized levels.
using Block = std::array<std::array<std::int32_t, kCuPixels>, kNumComponents>;
using ComponentBlock = std::array<std::int32_t, kCuPixels>;

inline constexpr int kCubesPerComponent = 16;
inline constexpr int kMaxBitPlane = 15;

/// Per-component bit-widths of the sixteen 2x2 cubes, cube order raster
/// over the 8x2 cube grid.
using BitPlaneSet = std::array<std::array<std::uint8_t, kCubesPerComponent>, kNumComponents>;

/// Reconstructed reference samples above and to the left of a CU.
struct NeighborContext {
  int bit_depth = 8;
  bool has_top = false;
  bool has_left = false;
  std::array<std::array<Sample, kCuWidth>, kNumComponents> top{};
  std::array<std::array<Sample, kCuHeight>, kNumComponents> left{};
};

/// Gathers references for the CU at (x0, y0) from a reconstruction buffer.
[[nodiscard]] NeighborContext make_context(const Frame& recon, int x0, int y0);

[[nodiscard]] Block predict(const NeighborContext& ctx, PredMode mode);

/// original - prediction.
[[nodiscard]] Block predict_cu(const CodingUnit::Block& cu, const NeighborContext& ctx, PredMode mode);

/// One level of reversible 5/3 lifting, horizontal (rows of 16) then
/// vertical (columns of 4). Output is deinterleaved: lowpass first.
[[nodiscard]] ComponentBlock forward_dwt(const ComponentBlock& in);
[[nodiscard]] ComponentBlock inverse_dwt(const ComponentBlock& in);
[[nodiscard]] Block forward_dwt(const Block& in);
[[nodiscard]] Block inverse_dwt(const Block& in);

/// Quantizer shift: zero for qp <= 3 at any bit depth. Above that one step at
/// every odd qp (9 at qp 19 for 8-bit), plus bit_depth - 8. The palette
/// threshold steps at even qps.
[[nodiscard]] constexpr int quant_shift(int qp, int bit_depth) noexcept {
  return qp > 3 ? (qp - 3) / 2 + 1 + (bit_depth - 8) : 0;
}

[[nodiscard]] std::int32_t quantize(std::int32_t c, int shift) noexcept;
[[nodiscard]] std::int32_t dequantize(std::int32_t q, int shift) noexcept;
[[nodiscard]] Block quantize(const Block& coeffs, Qp qp, int bit_depth);
[[nodiscard]] Block dequantize(const Block& levels, Qp qp, int bit_depth);

/// Position of the highest set bit plus one; 0 for 0.
[[nodiscard]] int bitwidth(std::uint32_t magnitude) noexcept;

/// Index into a ComponentBlock for member `k` (0..3, raster) of cube `cube`.
[[nodiscard]] constexpr int cube_member(int cube, int k) noexcept {
  const int cx = cube % 8;
  const int cy = cube / 8;
  return (2 * cy + k / 2) * kCuWidth + 2 * cx + k % 2;
}

struct DpRate {
  std::int64_t bits = 0;
  BitPlaneSet bitplanes{};
};

/// Exact payload size produced by entropy::encode_cu_dp, plus the per-cube
/// bit-planes the entropy coder reuses.
[[nodiscard]] DpRate estimate_rate_dp(const Block& levels);

/// prediction + inverse_dwt(dequantize(levels)), clamped.
[[nodiscard]] CodingUnit::Block reconstruct_dp(const NeighborContext& ctx, PredMode mode, const Block& levels, Qp qp);

}  // namespace hlc::predict
