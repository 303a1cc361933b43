#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace hlc {

enum class PredMode : std::uint8_t { kDc = 0, kVt = 1, kHt = 2 };

inline constexpr std::array<PredMode, 3> kPredModes{PredMode::kDc, PredMode::kVt, PredMode::kHt};

/// CU coding mode. Enumerator order is the RDO tie-break preference.
enum class CuMode : std::uint8_t { kDc = 0, kVt = 1, kHt = 2, kPlt = 3 };

inline constexpr int kNumCuModes = 4;

[[nodiscard]] constexpr CuMode to_cu_mode(PredMode m) noexcept { return static_cast<CuMode>(m); }
[[nodiscard]] constexpr bool is_dp(CuMode m) noexcept { return m != CuMode::kPlt; }
[[nodiscard]] constexpr PredMode to_pred_mode(CuMode m) noexcept { return static_cast<PredMode>(m); }

[[nodiscard]] constexpr std::string_view to_string(CuMode m) noexcept {
  switch (m) {
    case CuMode::kDc: return "DC";
    case CuMode::kVt: return "VT";
    case CuMode::kHt: return "HT";
    case CuMode::kPlt: return "PLT";
  }
  return "?";
}

}  // namespace hlc
