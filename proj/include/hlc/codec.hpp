#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hlc/core.hpp"
#include "hlc/mode.hpp"
#include "hlc/rdo.hpp"

namespace hlc {

struct EncoderConfig {
  double target_bpp = 1.5;
  /// Centre of the rate-control QP window. When unset the encoder takes a
  /// guess from a fixed-QP sweep over a row subsample, then runs up to two
  /// more full-frame passes one qp apart and keeps the closest.
  std::optional<int> qp_base;
  bool plt_enabled = true;
  rdo::LambdaTable lambdas;
  int rc_gain = 256;
  int rc_max_step = 4;
  /// Recorded in the container so decoders can undo the color transform.
  bool ycbcr = false;
  /// Threads for the qp_base sweep; 1 runs the serial path, 0 lets OpenMP decide.
  int threads = 0;
};

inline constexpr std::array<char, 4> kMagic{'H', 'L', 'C', '1'};
inline constexpr std::size_t kHeaderBytes = 13;

inline constexpr std::uint8_t kFlagPlt = 0x01;
inline constexpr std::uint8_t kFlagYcbcr = 0x02;

/// Container header, big-endian:
/// magic(4) width(u16) height(u16) bit_depth(u8) qp_base(u8) target_bpp(u16, 1/256) flags(u8)
struct BitstreamHeader {
  int width = 0;   // before padding
  int height = 0;
  int bit_depth = 8;
  int qp_base = 0;
  int target_bpp_fixed = 0;
  std::uint8_t flags = 0;

  friend bool operator==(const BitstreamHeader&, const BitstreamHeader&) = default;
};

void write_header(const BitstreamHeader& header, std::vector<std::uint8_t>& out);
/// Throws DecodeError on bad magic, truncation or out-of-range fields.
[[nodiscard]] BitstreamHeader read_header(std::span<const std::uint8_t> bytes);

struct EncodeStats {
  std::array<std::int64_t, kNumCuModes> mode_counts{};  // indexed by CuMode
  std::int64_t payload_bits = 0;  // CU headers and payloads
  std::int64_t final_bit_error = 0;
  int qp_base = 0;

  [[nodiscard]] std::int64_t cu_count() const noexcept {
    return mode_counts[0] + mode_counts[1] + mode_counts[2] + mode_counts[3];
  }
};

struct EncodedFrame {
  std::vector<std::uint8_t> bytes;
  Frame reconstruction;  // encoder-side, cropped to the input size
  EncodeStats stats;

  [[nodiscard]] double bpp() const noexcept {
    return static_cast<double>(bytes.size() * 8) / static_cast<double>(reconstruction.pixel_count());
  }
};

[[nodiscard]] EncodedFrame encode_frame(const Frame& frame, const EncoderConfig& config);

struct DecodedFrame {
  Frame frame;
  BitstreamHeader header;
  std::size_t bytes_consumed = 0;
};

/// Decodes one frame from the front of `bytes`; trailing data is left for
/// the next frame.
[[nodiscard]] DecodedFrame decode_frame(std::span<const std::uint8_t> bytes);

/// Picks the QP whose fixed-QP rate on a row subsample is closest to the
/// target (log-ratio). `threads` as in EncoderConfig.
[[nodiscard]] int choose_qp_base(const Frame& padded, const EncoderConfig& config);
[[nodiscard]] int choose_qp_base_serial(const Frame& padded, const EncoderConfig& config);

/// Fixed-QP bits/pixel of every QP on the trial subsample, indexed by qp.
[[nodiscard]] std::array<double, kNumQps> sweep_fixed_qp(const Frame& padded, const EncoderConfig& config);
[[nodiscard]] std::array<double, kNumQps> sweep_fixed_qp_serial(const Frame& padded, const EncoderConfig& config);

}  // namespace hlc
