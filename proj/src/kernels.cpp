#include "hlc/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace hlc::kernels {

namespace {

constexpr double kKr = 0.2126;
constexpr double kKb = 0.0722;
constexpr double kKg = 1.0 - kKr - kKb;
constexpr double kCbScale = 2.0 * (1.0 - kKb);  // 1.8556
constexpr double kCrScale = 2.0 * (1.0 - kKr);  // 1.5748

void check_sizes(std::span<const Sample> a, std::span<const Sample> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("sample spans differ in length");
  }
}

inline Sample round_clamp(double v, double max) {
  return static_cast<Sample>(std::clamp(std::floor(v + 0.5), 0.0, max));
}

struct Triple {
  Sample a, b, c;
};

inline Triple to_ycbcr(Sample r, Sample g, Sample b, double mid, double max) {
  const double y = kKr * r + kKg * g + kKb * b;
  const double cb = (b - y) / kCbScale + mid;
  const double cr = (r - y) / kCrScale + mid;
  return {round_clamp(y, max), round_clamp(cb, max), round_clamp(cr, max)};
}

inline Triple to_rgb(Sample y, Sample cb, Sample cr, double mid, double max) {
  const double r = y + kCrScale * (cr - mid);
  const double b = y + kCbScale * (cb - mid);
  const double g = (y - kKr * r - kKb * b) / kKg;
  return {round_clamp(r, max), round_clamp(g, max), round_clamp(b, max)};
}

template <typename Fn>
void convert_pixel(Frame& frame, std::size_t i, Fn fn) {
  const double mid = static_cast<double>(1 << (frame.bit_depth() - 1));
  const double max = static_cast<double>(frame.max_sample());
  auto p0 = frame.plane(0).samples();
  auto p1 = frame.plane(1).samples();
  auto p2 = frame.plane(2).samples();
  const Triple t = fn(p0[i], p1[i], p2[i], mid, max);
  p0[i] = t.a;
  p1[i] = t.b;
  p2[i] = t.c;
}

}  // namespace

std::uint64_t sse_serial(std::span<const Sample> a, std::span<const Sample> b) {
  check_sizes(a, b);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
    total += static_cast<std::uint64_t>(d * d);
  }
  return total;
}

std::uint64_t sse(std::span<const Sample> a, std::span<const Sample> b) {
  check_sizes(a, b);
  const auto n = static_cast<std::int64_t>(a.size());
  std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[static_cast<std::size_t>(i)]) - b[static_cast<std::size_t>(i)];
    total += static_cast<std::uint64_t>(d * d);
  }
  return total;
}

std::uint64_t sad_serial(std::span<const Sample> a, std::span<const Sample> b) {
  check_sizes(a, b);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += static_cast<std::uint64_t>(std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i])));
  }
  return total;
}

std::uint64_t sad(std::span<const Sample> a, std::span<const Sample> b) {
  check_sizes(a, b);
  const auto n = static_cast<std::int64_t>(a.size());
  std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    total += static_cast<std::uint64_t>(std::abs(static_cast<int>(a[k]) - static_cast<int>(b[k])));
  }
  return total;
}

void rgb_to_ycbcr_serial(Frame& frame) {
  for (std::size_t i = 0; i < frame.pixel_count(); ++i) {
    convert_pixel(frame, i, to_ycbcr);
  }
}

void rgb_to_ycbcr(Frame& frame) {
  const auto n = static_cast<std::int64_t>(frame.pixel_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    convert_pixel(frame, static_cast<std::size_t>(i), to_ycbcr);
  }
}

void ycbcr_to_rgb_serial(Frame& frame) {
  for (std::size_t i = 0; i < frame.pixel_count(); ++i) {
    convert_pixel(frame, i, to_rgb);
  }
}

void ycbcr_to_rgb(Frame& frame) {
  const auto n = static_cast<std::int64_t>(frame.pixel_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    convert_pixel(frame, static_cast<std::size_t>(i), to_rgb);
  }
}

}  // namespace hlc::kernels
