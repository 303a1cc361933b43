#include "hlc/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hlc/kernels.hpp"

namespace hlc {

Qp::Qp(int value) : value_(value) {
  if (value < kMinQp || value > kMaxQp) {
    throw std::invalid_argument("qp out of range: " + std::to_string(value));
  }
}

Plane::Plane(int width, int height, Sample fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("negative plane dimensions");
  }
  samples_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Frame::Frame(int width, int height, int bit_depth) : width_(width), height_(height), bit_depth_(bit_depth) {
  if (bit_depth != 8 && bit_depth != 10) {
    throw std::invalid_argument("bit depth must be 8 or 10");
  }
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("frame dimensions must be positive");
  }
  for (auto& p : planes_) {
    p = Plane(width, height);
  }
}

void Frame::validate() const {
  const Sample max = max_sample();
  for (const auto& p : planes_) {
    if (p.width() != width_ || p.height() != height_) {
      throw std::invalid_argument("plane dimensions differ from frame");
    }
    if (std::ranges::any_of(p.samples(), [max](Sample s) { return s > max; })) {
      throw std::invalid_argument("sample exceeds bit depth");
    }
  }
}

bool is_aligned(int width, int height) noexcept {
  return width % kCuWidth == 0 && height % kCuHeight == 0;
}

Frame pad_frame(const Frame& frame) {
  const int w = (frame.width() + kCuWidth - 1) / kCuWidth * kCuWidth;
  const int h = (frame.height() + kCuHeight - 1) / kCuHeight * kCuHeight;
  if (w == frame.width() && h == frame.height()) {
    return frame;
  }
  Frame out(w, h, frame.bit_depth());
  for (int c = 0; c < kNumComponents; ++c) {
    const Plane& src = frame.plane(c);
    Plane& dst = out.plane(c);
    for (int y = 0; y < h; ++y) {
      const int sy = std::min(y, frame.height() - 1);
      for (int x = 0; x < w; ++x) {
        dst.at(x, y) = src.at(std::min(x, frame.width() - 1), sy);
      }
    }
  }
  return out;
}

Frame crop_frame(const Frame& frame, int width, int height) {
  if (width > frame.width() || height > frame.height()) {
    throw std::invalid_argument("crop region exceeds frame");
  }
  if (width == frame.width() && height == frame.height()) {
    return frame;
  }
  Frame out(width, height, frame.bit_depth());
  for (int c = 0; c < kNumComponents; ++c) {
    for (int y = 0; y < height; ++y) {
      const auto src = frame.plane(c).row(y);
      std::copy_n(src.begin(), width, out.plane(c).samples().begin() + static_cast<std::ptrdiff_t>(y) * width);
    }
  }
  return out;
}

CodingUnit extract_cu(const Frame& frame, int x0, int y0) {
  CodingUnit cu;
  cu.x0 = x0;
  cu.y0 = y0;
  for (int c = 0; c < kNumComponents; ++c) {
    auto& dst = cu.samples[static_cast<std::size_t>(c)];
    for (int y = 0; y < kCuHeight; ++y) {
      const auto src = frame.plane(c).row(y0 + y).subspan(static_cast<std::size_t>(x0), kCuWidth);
      std::ranges::copy(src, dst.begin() + y * kCuWidth);
    }
  }
  return cu;
}

void store_cu(Frame& frame, int x0, int y0, const CodingUnit::Block& samples) {
  for (int c = 0; c < kNumComponents; ++c) {
    const auto& src = samples[static_cast<std::size_t>(c)];
    Plane& dst = frame.plane(c);
    for (int y = 0; y < kCuHeight; ++y) {
      for (int x = 0; x < kCuWidth; ++x) {
        dst.at(x0 + x, y0 + y) = src[static_cast<std::size_t>(y * kCuWidth + x)];
      }
    }
  }
}

std::vector<CodingUnit> tile_frame(const Frame& frame) {
  if (!is_aligned(frame.width(), frame.height())) {
    throw std::invalid_argument("frame must be padded to a multiple of 16x4 before tiling");
  }
  std::vector<CodingUnit> cus;
  cus.reserve(frame.pixel_count() / kCuPixels);
  for (int y = 0; y < frame.height(); y += kCuHeight) {
    for (int x = 0; x < frame.width(); x += kCuWidth) {
      cus.push_back(extract_cu(frame, x, y));
    }
  }
  return cus;
}

Frame untile_frame(std::span<const CodingUnit> cus, int width, int height, int bit_depth) {
  if (!is_aligned(width, height)) {
    throw std::invalid_argument("untile dimensions must be a multiple of 16x4");
  }
  const auto expected = static_cast<std::size_t>(width / kCuWidth) * static_cast<std::size_t>(height / kCuHeight);
  if (cus.size() != expected) {
    throw std::invalid_argument("CU count does not match frame dimensions");
  }
  Frame out(width, height, bit_depth);
  for (const auto& cu : cus) {
    store_cu(out, cu.x0, cu.y0, cu.samples);
  }
  return out;
}

std::uint64_t plane_sse(const Plane& a, const Plane& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("plane dimensions differ");
  }
  return kernels::sse(a.samples(), b.samples());
}

double psnr_from_mse(double mse, int bit_depth) {
  if (mse <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double peak = static_cast<double>((1 << bit_depth) - 1);
  return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const Plane& a, const Plane& b, int bit_depth) {
  const std::uint64_t sse = plane_sse(a, b);
  const double count = static_cast<double>(a.samples().size());
  return psnr_from_mse(static_cast<double>(sse) / count, bit_depth);
}

double psnr_frame(const Frame& a, const Frame& b) {
  if (a.bit_depth() != b.bit_depth()) {
    throw std::invalid_argument("bit depths differ");
  }
  std::uint64_t sse = 0;
  for (int c = 0; c < kNumComponents; ++c) {
    sse += plane_sse(a.plane(c), b.plane(c));
  }
  const double count = static_cast<double>(a.pixel_count()) * kNumComponents;
  return psnr_from_mse(static_cast<double>(sse) / count, a.bit_depth());
}

}  // namespace hlc
