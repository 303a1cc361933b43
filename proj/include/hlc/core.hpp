#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hlc {

using Sample = std::uint16_t;

inline constexpr int kNumComponents = 3;
inline constexpr int kCuWidth = 16;
inline constexpr int kCuHeight = 4;
inline constexpr int kCuPixels = kCuWidth * kCuHeight;

inline constexpr int kMinQp = 0;
inline constexpr int kMaxQp = 19;
inline constexpr int kNumQps = kMaxQp - kMinQp + 1;

/// Quantization parameter, always within [kMinQp, kMaxQp].
class Qp {
 public:
  /// Throws std::invalid_argument when out of range.
  explicit Qp(int value);

  [[nodiscard]] constexpr int value() const noexcept { return value_; }

  friend constexpr bool operator==(Qp, Qp) = default;
  friend constexpr auto operator<=>(Qp, Qp) = default;

 private:
  int value_;
};

class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, Sample fill = 0);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }

  [[nodiscard]] Sample at(int x, int y) const { return samples_[index(x, y)]; }
  Sample& at(int x, int y) { return samples_[index(x, y)]; }

  [[nodiscard]] std::span<const Sample> samples() const noexcept { return samples_; }
  [[nodiscard]] std::span<Sample> samples() noexcept { return samples_; }
  [[nodiscard]] std::span<const Sample> row(int y) const {
    return std::span<const Sample>(samples_).subspan(index(0, y), static_cast<std::size_t>(width_));
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  [[nodiscard]] std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Sample> samples_;
};

/// Three-component 4:4:4 picture. Component order is fixed (C0, C1, C2);
/// the codec does not interpret the color space.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, int bit_depth);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] int bit_depth() const noexcept { return bit_depth_; }
  [[nodiscard]] Sample max_sample() const noexcept { return static_cast<Sample>((1 << bit_depth_) - 1); }
  [[nodiscard]] std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  [[nodiscard]] const Plane& plane(int c) const { return planes_[static_cast<std::size_t>(c)]; }
  Plane& plane(int c) { return planes_[static_cast<std::size_t>(c)]; }

  /// Throws std::invalid_argument if a sample is out of range or the planes disagree in size.
  void validate() const;

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int bit_depth_ = 8;
  std::array<Plane, kNumComponents> planes_;
};

/// One 16x4 block, samples in raster order per component.
struct CodingUnit {
  using Block = std::array<std::array<Sample, kCuPixels>, kNumComponents>;

  int x0 = 0;
  int y0 = 0;
  Block samples{};

  [[nodiscard]] Sample at(int c, int x, int y) const {
    return samples[static_cast<std::size_t>(c)][static_cast<std::size_t>(y * kCuWidth + x)];
  }
};

[[nodiscard]] bool is_aligned(int width, int height) noexcept;

/// Rounds dimensions up to the CU grid, replicating the last column/row.
[[nodiscard]] Frame pad_frame(const Frame& frame);

/// Keeps the top-left width x height region.
[[nodiscard]] Frame crop_frame(const Frame& frame, int width, int height);

[[nodiscard]] CodingUnit extract_cu(const Frame& frame, int x0, int y0);
void store_cu(Frame& frame, int x0, int y0, const CodingUnit::Block& samples);

/// Raster-order CUs of an aligned frame. Throws std::invalid_argument when
/// the frame is not a multiple of 16x4.
[[nodiscard]] std::vector<CodingUnit> tile_frame(const Frame& frame);

/// Inverse of tile_frame.
[[nodiscard]] Frame untile_frame(std::span<const CodingUnit> cus, int width, int height, int bit_depth);

[[nodiscard]] std::uint64_t plane_sse(const Plane& a, const Plane& b);

/// 10*log10(MAX^2/MSE). Returns +infinity for identical planes.
[[nodiscard]] double psnr(const Plane& a, const Plane& b, int bit_depth);

/// PSNR of the MSE pooled over all three planes.
[[nodiscard]] double psnr_frame(const Frame& a, const Frame& b);

[[nodiscard]] double psnr_from_mse(double mse, int bit_depth);

}  // namespace hlc
