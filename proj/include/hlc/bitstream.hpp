#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hlc {

/// Append-only bit writer. Bits are packed MSB-first within each byte.
class BitSink {
 public:
  /// Writes the low `count` bits of `value`, most significant first. count <= 32.
  void write(std::uint32_t value, int count);
  void write_bit(bool bit);

  /// Appends every bit of `other`, preserving its bit alignment.
  void append(const BitSink& other);

  /// Zero-pads to the next byte boundary.
  void align();

  [[nodiscard]] std::size_t bit_count() const noexcept { return bit_count_; }
  /// Bytes written so far; a partial trailing byte is zero-padded.
  [[nodiscard]] const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  [[nodiscard]] std::vector<std::uint8_t> take_bytes() && { return std::move(bytes_); }

  /// "0101..." rendering, for tests and debugging.
  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
};

/// Bit reader over a borrowed byte span. Reads past the end throw DecodeError.
class BitSource {
 public:
  explicit BitSource(std::span<const std::uint8_t> bytes) noexcept
      : bytes_(bytes), limit_(bytes.size() * 8) {}
  BitSource(std::span<const std::uint8_t> bytes, std::size_t bit_limit);

  [[nodiscard]] std::uint32_t read(int count);
  [[nodiscard]] bool read_bit();

  /// Skips to the next byte boundary.
  void align() noexcept;

  [[nodiscard]] std::size_t position() const noexcept { return pos_; }
  [[nodiscard]] std::size_t remaining() const noexcept { return limit_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t limit_;
  std::size_t pos_ = 0;
};

}  // namespace hlc
