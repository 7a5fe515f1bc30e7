#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace btn {

// A bit string packed MSB-first into bytes. Bits past `size` in the last
// byte are always zero.
struct PackedBits {
  std::vector<std::uint8_t> bytes;
  std::uint64_t size = 0;

  // Renders as a string of '0' and '1'.
  std::string to_string() const;
  static PackedBits from_string(std::string_view bits);

  bool operator==(const PackedBits&) const = default;
};

class BitWriter {
public:
  // Appends the low `count` bits of `value`, most significant first.
  // count <= 64.
  void write(std::uint64_t value, unsigned count);
  void write_bit(bool bit) { write(bit ? 1u : 0u, 1); }

  std::uint64_t size() const { return size_; }

  // Flushes and returns the packed bits; the writer is left empty.
  PackedBits finish();

private:
  void flush_bytes();

  std::vector<std::uint8_t> bytes_;
  std::uint64_t acc_ = 0;  // pending bits, right-aligned
  unsigned pending_ = 0;   // number of pending bits, < 8 between calls
  std::uint64_t size_ = 0;
};

// Reads bits MSB-first from a byte span, limited to `bit_limit` bits.
// Reading past the limit throws TruncationError.
class BitReader {
public:
  explicit BitReader(std::span<const std::uint8_t> bytes);
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit);
  explicit BitReader(const PackedBits& bits) : BitReader(bits.bytes, bits.size) {}

  bool read_bit() {
    if (pos_ >= limit_) {
      throw_exhausted();
    }
    const bool bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return bit;
  }

  // count <= 64
  std::uint64_t read(unsigned count);

  std::uint64_t position() const { return pos_; }
  std::uint64_t remaining() const { return limit_ - pos_; }
  std::uint64_t limit() const { return limit_; }

private:
  [[noreturn]] void throw_exhausted() const;

  std::span<const std::uint8_t> bytes_;
  std::uint64_t limit_;
  std::uint64_t pos_ = 0;
};

}  // namespace btn
