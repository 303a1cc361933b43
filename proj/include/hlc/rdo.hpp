#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "hlc/core.hpp"
#include "hlc/mode.hpp"

namespace hlc::rdo {

/// D = C * R^-K.
struct RdModel {
  double c = 1.0;
  double k = 1.0;
  double r_square = 0.0;
};

struct RdPoint {
  double rate_bpp;
  double distortion;
};

/// Least-squares fit of log D = log C - K log R. Needs >= 3 points with
/// positive rate and distortion; throws std::invalid_argument otherwise.
[[nodiscard]] RdModel fit_rd_model(std::span<const RdPoint> points);

/// Lagrange multipliers per QP in 8-bit SAD per bit; the encoder scales them
/// by 2^(bit_depth - 8). Nondecreasing in qp.
class LambdaTable {
 public:
  LambdaTable();  // built-in default table
  explicit LambdaTable(const std::array<double, kNumQps>& values);

  [[nodiscard]] double operator[](Qp qp) const noexcept { return values_[static_cast<std::size_t>(qp.value())]; }
  [[nodiscard]] const std::array<double, kNumQps>& values() const noexcept { return values_; }

  /// Text form: one "qp value" pair per line for qp 0..19.
  [[nodiscard]] std::string to_text() const;
  /// Throws hlc::Error on malformed input.
  [[nodiscard]] static LambdaTable parse(const std::string& text);
  [[nodiscard]] static LambdaTable load(const std::string& path);
  void save(const std::string& path) const;

  friend bool operator==(const LambdaTable&, const LambdaTable&) = default;

 private:
  std::array<double, kNumQps> values_;
};

/// Table calibrated on the generated test corpus (see `hlc calibrate`).
[[nodiscard]] const std::array<double, kNumQps>& default_lambdas() noexcept;

/// lambda(qp) = C*K*R(qp)^(-K-1). Every anchor must be present and positive.
[[nodiscard]] LambdaTable derive_lambda_table(const RdModel& model,
                                              const std::array<std::optional<double>, kNumQps>& rate_anchor);

struct ModeCost {
  CuMode mode = CuMode::kDc;
  std::int64_t distortion = 0;  // SAD over all components
  std::int64_t rate = 0;        // exact bits, header included

  [[nodiscard]] double cost(double lambda) const noexcept {
    return static_cast<double>(distortion) + lambda * static_cast<double>(rate);
  }
};

/// argmin D + lambda*R; ties go to the earlier CuMode (DC < VT < HT < PLT).
[[nodiscard]] const ModeCost& choose_mode(std::span<const ModeCost> costs, double lambda);

}  // namespace hlc::rdo
