#pragma once

#include <cstdint>

#include "hlc/core.hpp"

namespace hlc::ratectl {

inline constexpr int kDefaultGain = 256;
inline constexpr int kDefaultMaxStep = 4;

/// Target rates are carried in 1/256 bpp units.
[[nodiscard]] std::int64_t to_fixed_bpp(double bpp);

struct RcState {
  std::int64_t target_bpp_fixed = 256;  // b_tar
  std::int64_t bit_error = 0;           // b_err, signed
  int qp_base = 8;
  int gain = kDefaultGain;              // bits per QP step
  int max_step = kDefaultMaxStep;       // |qp - qp_base| limit; 0 pins qp to qp_base
};

/// Throws std::invalid_argument on b_tar <= 0, qp_base outside [0,19],
/// gain <= 0 or negative max_step.
void validate(const RcState& state);

/// clamp(qp_base + clamp(floor(b_err / gain), -max_step, max_step), 0, 19).
[[nodiscard]] Qp qp_for_cu(const RcState& state);

/// b_err += actual_bits - b_tar * 64 / 256.
[[nodiscard]] RcState update(RcState state, std::int64_t actual_bits);

}  // namespace hlc::ratectl
