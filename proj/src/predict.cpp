#include "hlc/predict.hpp"

#include <algorithm>
#include <cstdlib>

#include "hlc/entropy.hpp"

namespace hlc::predict {

namespace {

// Reversible LeGall 5/3 lifting on n (even) samples at stride `stride`,
// whole-sample symmetric extension. Output: n/2 lowpass then n/2 highpass.
template <int N>
void lift_forward(std::int32_t* data, int stride) {
  constexpr int kHalf = N / 2;
  std::array<std::int32_t, N> x;
  for (int i = 0; i < N; ++i) {
    x[static_cast<std::size_t>(i)] = data[i * stride];
  }
  std::array<std::int32_t, kHalf> d;
  std::array<std::int32_t, kHalf> s;
  for (int i = 0; i < kHalf; ++i) {
    const std::int32_t right = (2 * i + 2 < N) ? x[static_cast<std::size_t>(2 * i + 2)] : x[N - 2];
    d[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(2 * i + 1)] - ((x[static_cast<std::size_t>(2 * i)] + right) >> 1);
  }
  for (int i = 0; i < kHalf; ++i) {
    const std::int32_t prev = d[static_cast<std::size_t>(i > 0 ? i - 1 : 0)];
    s[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(2 * i)] + ((prev + d[static_cast<std::size_t>(i)] + 2) >> 2);
  }
  for (int i = 0; i < kHalf; ++i) {
    data[i * stride] = s[static_cast<std::size_t>(i)];
    data[(kHalf + i) * stride] = d[static_cast<std::size_t>(i)];
  }
}

template <int N>
void lift_inverse(std::int32_t* data, int stride) {
  constexpr int kHalf = N / 2;
  std::array<std::int32_t, kHalf> s;
  std::array<std::int32_t, kHalf> d;
  for (int i = 0; i < kHalf; ++i) {
    s[static_cast<std::size_t>(i)] = data[i * stride];
    d[static_cast<std::size_t>(i)] = data[(kHalf + i) * stride];
  }
  std::array<std::int32_t, N> x;
  for (int i = 0; i < kHalf; ++i) {
    const std::int32_t prev = d[static_cast<std::size_t>(i > 0 ? i - 1 : 0)];
    x[static_cast<std::size_t>(2 * i)] = s[static_cast<std::size_t>(i)] - ((prev + d[static_cast<std::size_t>(i)] + 2) >> 2);
  }
  for (int i = 0; i < kHalf; ++i) {
    const std::int32_t right = (2 * i + 2 < N) ? x[static_cast<std::size_t>(2 * i + 2)] : x[N - 2];
    x[static_cast<std::size_t>(2 * i + 1)] = d[static_cast<std::size_t>(i)] + ((x[static_cast<std::size_t>(2 * i)] + right) >> 1);
  }
  for (int i = 0; i < N; ++i) {
    data[i * stride] = x[static_cast<std::size_t>(i)];
  }
}

std::int32_t round_half_up_div(std::int64_t sum, std::int64_t count) {
  return static_cast<std::int32_t>((sum + count / 2) / count);
}

}  // namespace

NeighborContext make_context(const Frame& recon, int x0, int y0) {
  NeighborContext ctx;
  ctx.bit_depth = recon.bit_depth();
  ctx.has_top = y0 > 0;
  ctx.has_left = x0 > 0;
  for (int c = 0; c < kNumComponents; ++c) {
    const Plane& p = recon.plane(c);
    if (ctx.has_top) {
      for (int x = 0; x < kCuWidth; ++x) {
        ctx.top[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = p.at(x0 + x, y0 - 1);
      }
    }
    if (ctx.has_left) {
      for (int y = 0; y < kCuHeight; ++y) {
        ctx.left[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)] = p.at(x0 - 1, y0 + y);
      }
    }
  }
  return ctx;
}

Block predict(const NeighborContext& ctx, PredMode mode) {
  const std::int32_t mid = 1 << (ctx.bit_depth - 1);
  Block pred{};
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    auto& out = pred[c];
    switch (mode) {
      case PredMode::kDc: {
        std::int64_t sum = 0;
        int n = 0;
        if (ctx.has_top) {
          for (Sample s : ctx.top[c]) sum += s;
          n += kCuWidth;
        }
        if (ctx.has_left) {
          for (Sample s : ctx.left[c]) sum += s;
          n += kCuHeight;
        }
        out.fill(n > 0 ? round_half_up_div(sum, n) : mid);
        break;
      }
      case PredMode::kVt:
        for (int y = 0; y < kCuHeight; ++y) {
          for (int x = 0; x < kCuWidth; ++x) {
            out[static_cast<std::size_t>(y * kCuWidth + x)] = ctx.has_top ? ctx.top[c][static_cast<std::size_t>(x)] : mid;
          }
        }
        break;
      case PredMode::kHt:
        for (int y = 0; y < kCuHeight; ++y) {
          for (int x = 0; x < kCuWidth; ++x) {
            out[static_cast<std::size_t>(y * kCuWidth + x)] = ctx.has_left ? ctx.left[c][static_cast<std::size_t>(y)] : mid;
          }
        }
        break;
    }
  }
  return pred;
}

Block predict_cu(const CodingUnit::Block& cu, const NeighborContext& ctx, PredMode mode) {
  Block res = predict(ctx, mode);
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    for (std::size_t i = 0; i < kCuPixels; ++i) {
      res[c][i] = static_cast<std::int32_t>(cu[c][i]) - res[c][i];
    }
  }
  return res;
}

ComponentBlock forward_dwt(const ComponentBlock& in) {
  ComponentBlock out = in;
  for (int y = 0; y < kCuHeight; ++y) {
    lift_forward<kCuWidth>(out.data() + y * kCuWidth, 1);
  }
  for (int x = 0; x < kCuWidth; ++x) {
    lift_forward<kCuHeight>(out.data() + x, kCuWidth);
  }
  return out;
}

ComponentBlock inverse_dwt(const ComponentBlock& in) {
  ComponentBlock out = in;
  for (int x = 0; x < kCuWidth; ++x) {
    lift_inverse<kCuHeight>(out.data() + x, kCuWidth);
  }
  for (int y = 0; y < kCuHeight; ++y) {
    lift_inverse<kCuWidth>(out.data() + y * kCuWidth, 1);
  }
  return out;
}

Block forward_dwt(const Block& in) {
  return {forward_dwt(in[0]), forward_dwt(in[1]), forward_dwt(in[2])};
}

Block inverse_dwt(const Block& in) {
  return {inverse_dwt(in[0]), inverse_dwt(in[1]), inverse_dwt(in[2])};
}

std::int32_t quantize(std::int32_t c, int shift) noexcept {
  if (shift == 0) {
    return c;
  }
  const std::int32_t mag = (std::abs(c) + (1 << (shift - 1))) >> shift;
  return c < 0 ? -mag : mag;
}

std::int32_t dequantize(std::int32_t q, int shift) noexcept {
  return q < 0 ? -(-q << shift) : q << shift;
}

Block quantize(const Block& coeffs, Qp qp, int bit_depth) {
  const int shift = quant_shift(qp.value(), bit_depth);
  Block out;
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    for (std::size_t i = 0; i < kCuPixels; ++i) {
      out[c][i] = quantize(coeffs[c][i], shift);
    }
  }
  return out;
}

Block dequantize(const Block& levels, Qp qp, int bit_depth) {
  const int shift = quant_shift(qp.value(), bit_depth);
  Block out;
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    for (std::size_t i = 0; i < kCuPixels; ++i) {
      out[c][i] = dequantize(levels[c][i], shift);
    }
  }
  return out;
}

int bitwidth(std::uint32_t magnitude) noexcept {
  int w = 0;
  while (magnitude != 0) {
    ++w;
    magnitude >>= 1;
  }
  return w;
}

DpRate estimate_rate_dp(const Block& levels) {
  DpRate rate;
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    const auto& comp = levels[c];
    int max_bp = 0;
    int magnitude_bits = 0;
    int nonzero = 0;
    for (int cube = 0; cube < kCubesPerComponent; ++cube) {
      int bp = 0;
      for (int k = 0; k < 4; ++k) {
        const std::int32_t v = comp[static_cast<std::size_t>(cube_member(cube, k))];
        bp = std::max(bp, bitwidth(static_cast<std::uint32_t>(std::abs(v))));
        nonzero += v != 0 ? 1 : 0;
      }
      rate.bitplanes[c][static_cast<std::size_t>(cube)] = static_cast<std::uint8_t>(bp);
      max_bp = std::max(max_bp, bp);
      magnitude_bits += 4 * bp;
    }
    rate.bits += entropy::kMaxBitPlaneBits;
    if (max_bp > 0) {
      rate.bits += kCubesPerComponent * bitwidth(static_cast<std::uint32_t>(max_bp)) + magnitude_bits + nonzero;
    }
  }
  return rate;
}

CodingUnit::Block reconstruct_dp(const NeighborContext& ctx, PredMode mode, const Block& levels, Qp qp) {
  const Block residual = inverse_dwt(dequantize(levels, qp, ctx.bit_depth));
  const Block pred = predict(ctx, mode);
  const std::int32_t max = (1 << ctx.bit_depth) - 1;
  CodingUnit::Block out;
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    for (std::size_t i = 0; i < kCuPixels; ++i) {
      out[c][i] = static_cast<Sample>(std::clamp(pred[c][i] + residual[c][i], 0, max));
    }
  }
  return out;
}

}  // namespace hlc::predict
