#include "hlc/bitstream.hpp"

#include <stdexcept>

#include "hlc/error.hpp"

namespace hlc {

void BitSink::write_bit(bool bit) {
  const std::size_t offset = bit_count_ & 7U;
  if (offset == 0) {
    bytes_.push_back(0);
  }
  if (bit) {
    bytes_.back() = static_cast<std::uint8_t>(bytes_.back() | (0x80U >> offset));
  }
  ++bit_count_;
}

void BitSink::write(std::uint32_t value, int count) {
  if (count < 0 || count > 32) {
    throw std::invalid_argument("bit count must be in [0, 32]");
  }
  int remaining = count;
  while (remaining > 0) {
    const std::size_t offset = bit_count_ & 7U;
    if (offset == 0) {
      bytes_.push_back(0);
    }
    const int room = 8 - static_cast<int>(offset);
    const int take = remaining < room ? remaining : room;
    const std::uint32_t chunk = (value >> (remaining - take)) & ((1U << take) - 1U);
    bytes_.back() = static_cast<std::uint8_t>(bytes_.back() | (chunk << (room - take)));
    remaining -= take;
    bit_count_ += static_cast<std::size_t>(take);
  }
}

void BitSink::append(const BitSink& other) {
  const std::size_t full = other.bit_count_ / 8;
  if ((bit_count_ & 7U) == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.begin() + static_cast<std::ptrdiff_t>(full));
    bit_count_ += full * 8;
  } else {
    for (std::size_t i = 0; i < full; ++i) {
      write(other.bytes_[i], 8);
    }
  }
  const int tail = static_cast<int>(other.bit_count_ & 7U);
  if (tail != 0) {
    write(static_cast<std::uint32_t>(other.bytes_[full] >> (8 - tail)), tail);
  }
}

void BitSink::align() {
  bit_count_ = (bit_count_ + 7U) & ~std::size_t{7};
}

std::string BitSink::to_string() const {
  std::string s;
  s.reserve(bit_count_);
  for (std::size_t i = 0; i < bit_count_; ++i) {
    s.push_back(((bytes_[i / 8] >> (7 - (i & 7U))) & 1U) != 0 ? '1' : '0');
  }
  return s;
}

BitSource::BitSource(std::span<const std::uint8_t> bytes, std::size_t bit_limit)
    : bytes_(bytes), limit_(bit_limit) {
  if (bit_limit > bytes.size() * 8) {
    throw std::invalid_argument("bit limit exceeds buffer");
  }
}

bool BitSource::read_bit() {
  if (pos_ >= limit_) {
    throw DecodeError("bitstream truncated");
  }
  const bool bit = ((bytes_[pos_ / 8] >> (7 - (pos_ & 7U))) & 1U) != 0;
  ++pos_;
  return bit;
}

std::uint32_t BitSource::read(int count) {
  if (count < 0 || count > 32) {
    throw std::invalid_argument("bit count must be in [0, 32]");
  }
  if (static_cast<std::size_t>(count) > limit_ - pos_) {
    throw DecodeError("bitstream truncated");
  }
  std::uint32_t value = 0;
  int remaining = count;
  while (remaining > 0) {
    const int offset = static_cast<int>(pos_ & 7U);
    const int room = 8 - offset;
    const int take = remaining < room ? remaining : room;
    const std::uint32_t byte = bytes_[pos_ / 8];
    const std::uint32_t chunk = (byte >> (room - take)) & ((1U << take) - 1U);
    value = (value << take) | chunk;
    remaining -= take;
    pos_ += static_cast<std::size_t>(take);
  }
  return value;
}

void BitSource::align() noexcept {
  pos_ = (pos_ + 7U) & ~std::size_t{7};
  if (pos_ > limit_) {
    pos_ = limit_;
  }
}

}  // namespace hlc
