#include "hlc/bench/bd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hlc::bench {

namespace {

struct LogCurve {
  std::vector<double> log_rate;
  std::vector<double> psnr;
};

LogCurve prepare(std::span<const double> bpp, std::span<const double> psnr) {
  if (bpp.size() != psnr.size()) {
    throw std::invalid_argument("rate and PSNR counts differ");
  }
  if (bpp.size() < 4) {
    throw std::invalid_argument("BD-PSNR needs at least 4 points per curve");
  }
  std::vector<std::size_t> order(bpp.size());
  std::iota(order.begin(), order.end(), 0);
  std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return bpp[a] < bpp[b]; });
  LogCurve c;
  for (std::size_t i : order) {
    if (!(bpp[i] > 0.0) || !std::isfinite(psnr[i])) {
      throw std::invalid_argument("BD-PSNR needs positive rates and finite PSNR");
    }
    if (!c.log_rate.empty() && std::log10(bpp[i]) <= c.log_rate.back()) {
      throw std::invalid_argument("BD-PSNR needs strictly increasing rates");
    }
    c.log_rate.push_back(std::log10(bpp[i]));
    c.psnr.push_back(psnr[i]);
  }
  return c;
}

}  // namespace

ScaledPoly fit_cubic(std::span<const double> x, std::span<const double> y) {
  constexpr int kDegree = 3;
  const double lo = *std::ranges::min_element(x);
  const double hi = *std::ranges::max_element(x);
  ScaledPoly p;
  p.mid = 0.5 * (lo + hi);
  p.half = hi > lo ? 0.5 * (hi - lo) : 1.0;

  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd v(n, kDegree + 1);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (x[static_cast<std::size_t>(i)] - p.mid) / p.half;
    double pw = 1.0;
    for (int j = 0; j <= kDegree; ++j) {
      v(i, j) = pw;
      pw *= t;
    }
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const auto qr = v.colPivHouseholderQr();
  if (qr.rank() < kDegree + 1) {
    throw std::invalid_argument("degenerate BD-PSNR fit");
  }
  const Eigen::VectorXd a = qr.solve(rhs);
  p.coeffs.assign(a.data(), a.data() + a.size());
  return p;
}

double ScaledPoly::operator()(double x) const {
  const double t = (x - mid) / half;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

double ScaledPoly::integral(double lo, double hi) const {
  auto antideriv = [this](double x) {
    const double t = (x - mid) / half;
    double acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      acc = acc * t + coeffs[j] / static_cast<double>(j + 1);
    }
    return acc * t * half;
  };
  return antideriv(hi) - antideriv(lo);
}

double bd_psnr(std::span<const double> ref_bpp, std::span<const double> ref_psnr, std::span<const double> test_bpp,
               std::span<const double> test_psnr) {
  const LogCurve ref = prepare(ref_bpp, ref_psnr);
  const LogCurve test = prepare(test_bpp, test_psnr);
  const double lo = std::max(ref.log_rate.front(), test.log_rate.front());
  const double hi = std::min(ref.log_rate.back(), test.log_rate.back());
  if (!(hi > lo)) {
    throw std::invalid_argument("BD-PSNR rate ranges do not overlap");
  }
  const double area_ref = fit_cubic(ref.log_rate, ref.psnr).integral(lo, hi);
  const double area_test = fit_cubic(test.log_rate, test.psnr).integral(lo, hi);
  return (area_test - area_ref) / (hi - lo);
}

double bd_psnr(const RdCurve& ref, const RdCurve& test) {
  auto split = [](const RdCurve& c) {
    std::pair<std::vector<double>, std::vector<double>> out;
    for (const auto& p : c) {
      out.first.push_back(p.bpp);
      out.second.push_back(p.psnr_avg);
    }
    return out;
  };
  const auto [rb, rp] = split(ref);
  const auto [tb, tp] = split(test);
  return bd_psnr(rb, rp, tb, tp);
}

}  // namespace hlc::bench
