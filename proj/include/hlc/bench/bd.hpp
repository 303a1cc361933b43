#pragma once

#include <array>
#include <span>
#include <vector>

namespace hlc::bench {

struct RatePoint {
  double bpp = 0.0;
  std::array<double, 3> psnr{};  // per plane
  double psnr_avg = 0.0;         // PSNR of the MSE pooled over planes
};

/// Points of one R-D curve. bd_psnr sorts by rate and requires strictly
/// increasing bpp.
using RdCurve = std::vector<RatePoint>;

/// Polynomial in t = (x - mid) / half, coefficients lowest order first.
struct ScaledPoly {
  std::vector<double> coeffs;
  double mid = 0.0;
  double half = 1.0;

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] double integral(double lo, double hi) const;
};

/// Least-squares cubic. Throws std::invalid_argument when rank deficient.
[[nodiscard]] ScaledPoly fit_cubic(std::span<const double> x, std::span<const double> y);

/// Bjontegaard delta PSNR: cubic fit of PSNR over log10(bpp) per curve,
/// mean vertical gap over the shared log-rate interval. Positive when `test`
/// is better than `ref`. Throws std::invalid_argument for fewer than four
/// points, non-increasing rates, non-finite PSNR or disjoint rate ranges.
[[nodiscard]] double bd_psnr(std::span<const double> ref_bpp, std::span<const double> ref_psnr,
                             std::span<const double> test_bpp, std::span<const double> test_psnr);
[[nodiscard]] double bd_psnr(const RdCurve& ref, const RdCurve& test);

}  // namespace hlc::bench
