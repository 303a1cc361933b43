#include "hlc/ratectl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hlc::ratectl {

std::int64_t to_fixed_bpp(double bpp) {
  if (!(bpp > 0.0) || bpp >= 256.0) {
    throw std::invalid_argument("target bpp must be in (0, 256)");
  }
  return std::max<std::int64_t>(1, std::llround(bpp * 256.0));
}

void validate(const RcState& state) {
  if (state.target_bpp_fixed <= 0) {
    throw std::invalid_argument("target bpp must be positive");
  }
  if (state.qp_base < kMinQp || state.qp_base > kMaxQp) {
    throw std::invalid_argument("qp_base out of range");
  }
  if (state.gain <= 0 || state.max_step < 0) {
    throw std::invalid_argument("rate control gain must be positive and step clamp nonnegative");
  }
}

Qp qp_for_cu(const RcState& state) {
  // floor division for negative errors
  std::int64_t delta = state.bit_error / state.gain;
  if (state.bit_error % state.gain != 0 && state.bit_error < 0) {
    --delta;
  }
  delta = std::clamp<std::int64_t>(delta, -state.max_step, state.max_step);
  return Qp(static_cast<int>(std::clamp<std::int64_t>(state.qp_base + delta, kMinQp, kMaxQp)));
}

RcState update(RcState state, std::int64_t actual_bits) {
  if (actual_bits < 0) {
    throw std::invalid_argument("actual bits must be nonnegative");
  }
  state.bit_error += actual_bits - state.target_bpp_fixed * kCuPixels / 256;
  return state;
}

}  // namespace hlc::ratectl
