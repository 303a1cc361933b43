#pragma once

#include <cstdint>
#include <vector>

#include "hlc/bitstream.hpp"
#include "hlc/core.hpp"
#include "hlc/mode.hpp"
#include "hlc/palette.hpp"
#include "hlc/predict.hpp"

// CU payload syntax. Every fixed-length field that sizes a variable-length
// one comes straight from the rate estimators (bit-planes, run lists), so the
// estimators and the writers agree bit for bit.
//
//   header : qp(5) plt_flag(1) [pred_mode(2) if !plt]
//   DP     : per component: max_bp(4); if max_bp > 0, per cube in raster
//            order: bp(bitwidth(max_bp)), 4 magnitudes of bp bits, one sign
//            bit per nonzero magnitude (1 = negative)
//   PLT    : cluster_count-1 (3), colors (count*3*bit_depth), per run:
//            symbol(2) + EG0(length-1), then one explicit index of
//            ceil(log2 count) bits per N pixel
namespace hlc::entropy {

inline constexpr int kQpBits = 5;
inline constexpr int kPltFlagBits = 1;
inline constexpr int kPredModeBits = 2;
inline constexpr int kMaxBitPlaneBits = 4;
inline constexpr int kClusterCountBits = 3;
inline constexpr int kRunSymbolBits = 2;

[[nodiscard]] int egc_bits(std::uint32_t v) noexcept;
/// Zero-order Exp-Golomb. v < 2^31.
void egc_encode(std::uint32_t v, BitSink& sink);
[[nodiscard]] std::uint32_t egc_decode(BitSource& source);

struct CuHeader {
  Qp qp{0};
  CuMode mode = CuMode::kDc;

  friend bool operator==(const CuHeader&, const CuHeader&) = default;
};

[[nodiscard]] constexpr int header_bits(CuMode mode) noexcept {
  return kQpBits + kPltFlagBits + (is_dp(mode) ? kPredModeBits : 0);
}

void encode_cu_header(const CuHeader& header, BitSink& sink);
[[nodiscard]] CuHeader decode_cu_header(BitSource& source);

/// Returns bits written. `bitplanes` must cover every coefficient.
std::int64_t encode_cu_dp(const predict::BitPlaneSet& bitplanes, const predict::Block& levels, BitSink& sink);
[[nodiscard]] predict::Block decode_cu_dp(BitSource& source);

std::int64_t encode_cu_plt(const palette::ClusterTable& table, const palette::RunList& runs, int bit_depth,
                           BitSink& sink);

struct PaletteData {
  std::vector<palette::Color> colors;
  palette::IndexMap indices{};
};

[[nodiscard]] PaletteData decode_cu_plt(BitSource& source, int bit_depth);

}  // namespace hlc::entropy
