#include "hlc/entropy.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

#include "hlc/error.hpp"

namespace hlc::entropy {

using predict::bitwidth;
using predict::cube_member;
using predict::kCubesPerComponent;

int egc_bits(std::uint32_t v) noexcept {
  return 2 * bitwidth(v + 1) - 1;
}

void egc_encode(std::uint32_t v, BitSink& sink) {
  if (v >= (1U << 31)) {
    throw std::invalid_argument("egc value out of range");
  }
  const std::uint32_t code = v + 1;
  const int info = bitwidth(code) - 1;
  sink.write(0, info);
  sink.write(code, info + 1);
}

std::uint32_t egc_decode(BitSource& source) {
  int zeros = 0;
  while (!source.read_bit()) {
    if (++zeros > 31) {
      throw DecodeError("malformed Exp-Golomb prefix");
    }
  }
  const std::uint32_t info = source.read(zeros);
  return ((1U << zeros) | info) - 1U;
}

void encode_cu_header(const CuHeader& header, BitSink& sink) {
  sink.write(static_cast<std::uint32_t>(header.qp.value()), kQpBits);
  const bool plt = header.mode == CuMode::kPlt;
  sink.write_bit(plt);
  if (!plt) {
    sink.write(static_cast<std::uint32_t>(header.mode), kPredModeBits);
  }
}

CuHeader decode_cu_header(BitSource& source) {
  const auto qp = static_cast<int>(source.read(kQpBits));
  if (qp > kMaxQp) {
    throw DecodeError("qp out of range in CU header");
  }
  CuHeader h{Qp(qp), CuMode::kPlt};
  if (!source.read_bit()) {
    const auto m = source.read(kPredModeBits);
    if (m > 2) {
      throw DecodeError("reserved prediction mode");
    }
    h.mode = static_cast<CuMode>(m);
  }
  return h;
}

std::int64_t encode_cu_dp(const predict::BitPlaneSet& bitplanes, const predict::Block& levels, BitSink& sink) {
  const std::size_t start = sink.bit_count();
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    const int max_bp = *std::ranges::max_element(bitplanes[c]);
    sink.write(static_cast<std::uint32_t>(max_bp), kMaxBitPlaneBits);
    if (max_bp == 0) {
      continue;
    }
    const int bp_bits = bitwidth(static_cast<std::uint32_t>(max_bp));
    for (int cube = 0; cube < kCubesPerComponent; ++cube) {
      const int bp = bitplanes[c][static_cast<std::size_t>(cube)];
      sink.write(static_cast<std::uint32_t>(bp), bp_bits);
      for (int k = 0; k < 4; ++k) {
        const auto mag = static_cast<std::uint32_t>(std::abs(levels[c][static_cast<std::size_t>(cube_member(cube, k))]));
        assert(bitwidth(mag) <= bp);
        sink.write(mag, bp);
      }
      for (int k = 0; k < 4; ++k) {
        const std::int32_t v = levels[c][static_cast<std::size_t>(cube_member(cube, k))];
        if (v != 0) {
          sink.write_bit(v < 0);
        }
      }
    }
  }
  return static_cast<std::int64_t>(sink.bit_count() - start);
}

predict::Block decode_cu_dp(BitSource& source) {
  predict::Block levels{};
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    const auto max_bp = static_cast<int>(source.read(kMaxBitPlaneBits));
    if (max_bp == 0) {
      continue;
    }
    const int bp_bits = bitwidth(static_cast<std::uint32_t>(max_bp));
    for (int cube = 0; cube < kCubesPerComponent; ++cube) {
      const auto bp = static_cast<int>(source.read(bp_bits));
      if (bp > max_bp) {
        throw DecodeError("cube bit-plane exceeds component maximum");
      }
      std::array<std::int32_t, 4> mags{};
      for (auto& m : mags) {
        m = static_cast<std::int32_t>(source.read(bp));
      }
      for (int k = 0; k < 4; ++k) {
        std::int32_t v = mags[static_cast<std::size_t>(k)];
        if (v != 0 && source.read_bit()) {
          v = -v;
        }
        levels[c][static_cast<std::size_t>(cube_member(cube, k))] = v;
      }
    }
  }
  return levels;
}

std::int64_t encode_cu_plt(const palette::ClusterTable& table, const palette::RunList& runs, int bit_depth,
                           BitSink& sink) {
  const std::size_t start = sink.bit_count();
  const int count = table.size();
  assert(count >= 1 && count <= palette::kMaxClusters);
  sink.write(static_cast<std::uint32_t>(count - 1), kClusterCountBits);
  for (const auto& e : table.entries()) {
    for (std::int32_t v : e.virtual_cc) {
      sink.write(static_cast<std::uint32_t>(v), bit_depth);
    }
  }
  for (const auto& run : runs.runs) {
    sink.write(static_cast<std::uint32_t>(run.symbol), kRunSymbolBits);
    egc_encode(static_cast<std::uint32_t>(run.length - 1), sink);
  }
  const int idx_bits = palette::index_bits(count);
  for (std::uint8_t idx : runs.explicit_indices) {
    sink.write(idx, idx_bits);
  }
  return static_cast<std::int64_t>(sink.bit_count() - start);
}

PaletteData decode_cu_plt(BitSource& source, int bit_depth) {
  PaletteData out;
  const int count = static_cast<int>(source.read(kClusterCountBits)) + 1;
  const std::uint32_t max = (1U << bit_depth) - 1U;
  out.colors.resize(static_cast<std::size_t>(count));
  for (auto& color : out.colors) {
    for (auto& v : color) {
      const std::uint32_t s = source.read(bit_depth);
      if (s > max) {
        throw DecodeError("palette color out of range");
      }
      v = static_cast<std::int32_t>(s);
    }
  }

  palette::RunList runs;
  int covered = 0;
  int new_pixels = 0;
  while (covered < kCuPixels) {
    const auto sym = source.read(kRunSymbolBits);
    if (sym > 2) {
      throw DecodeError("reserved run symbol");
    }
    const std::uint32_t len_minus_one = egc_decode(source);
    if (len_minus_one >= static_cast<std::uint32_t>(kCuPixels - covered)) {
      throw DecodeError("run lengths do not sum to 64");
    }
    const int len = static_cast<int>(len_minus_one) + 1;
    runs.runs.push_back({static_cast<palette::RunSymbol>(sym), len});
    covered += len;
    if (sym == static_cast<std::uint32_t>(palette::RunSymbol::kNew)) {
      new_pixels += len;
    }
  }

  const int idx_bits = palette::index_bits(count);
  runs.explicit_indices.resize(static_cast<std::size_t>(new_pixels));
  for (auto& idx : runs.explicit_indices) {
    const std::uint32_t v = source.read(idx_bits);
    if (v >= static_cast<std::uint32_t>(count)) {
      throw DecodeError("palette index out of range");
    }
    idx = static_cast<std::uint8_t>(v);
  }
  out.indices = palette::inverse_map(runs);
  return out;
}

}  // namespace hlc::entropy
