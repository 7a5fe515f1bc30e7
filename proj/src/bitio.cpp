#include "btn/bitio.hpp"

#include <stdexcept>

#include "btn/error.hpp"

namespace btn {

std::string PackedBits::to_string() const {
  std::string out;
  out.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    out.push_back(((bytes[i >> 3] >> (7 - (i & 7))) & 1u) ? '1' : '0');
  }
  return out;
}

PackedBits PackedBits::from_string(std::string_view bits) {
  BitWriter writer;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    writer.write_bit(c == '1');
  }
  return writer.finish();
}

void BitWriter::write(std::uint64_t value, unsigned count) {
  if (count > 64) {
    throw std::invalid_argument("BitWriter::write: count > 64");
  }
  // Split so the accumulator (< 8 pending bits) never overflows.
  while (count > 0) {
    const unsigned chunk = count > 56 ? 56 : count;
    count -= chunk;
    const std::uint64_t part = (value >> count) & ((std::uint64_t{1} << chunk) - 1);
    acc_ = (acc_ << chunk) | part;
    pending_ += chunk;
    size_ += chunk;
    flush_bytes();
  }
}

void BitWriter::flush_bytes() {
  while (pending_ >= 8) {
    pending_ -= 8;
    bytes_.push_back(static_cast<std::uint8_t>(acc_ >> pending_));
  }
  acc_ &= (std::uint64_t{1} << pending_) - 1;
}

PackedBits BitWriter::finish() {
  if (pending_ > 0) {
    bytes_.push_back(static_cast<std::uint8_t>(acc_ << (8 - pending_)));
  }
  PackedBits out{std::move(bytes_), size_};
  bytes_.clear();
  acc_ = 0;
  pending_ = 0;
  size_ = 0;
  return out;
}

BitReader::BitReader(std::span<const std::uint8_t> bytes)
    : BitReader(bytes, std::uint64_t{bytes.size()} * 8) {}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit)
    : bytes_(bytes), limit_(bit_limit) {
  if (bit_limit > std::uint64_t{bytes.size()} * 8) {
    throw std::invalid_argument("BitReader: bit limit exceeds buffer");
  }
}

std::uint64_t BitReader::read(unsigned count) {
  if (count > 64) {
    throw std::invalid_argument("BitReader::read: count > 64");
  }
  if (count > remaining()) {
    throw_exhausted();
  }
  std::uint64_t value = 0;
  // Byte-at-a-time when aligned, bitwise otherwise.
  while (count > 0) {
    const unsigned offset = pos_ & 7;
    const unsigned avail = 8 - offset;
    const unsigned take = count < avail ? count : avail;
    const unsigned byte = bytes_[pos_ >> 3];
    const unsigned bits = (byte >> (avail - take)) & ((1u << take) - 1);
    value = (value << take) | bits;
    pos_ += take;
    count -= take;
  }
  return value;
}

void BitReader::throw_exhausted() const {
  throw TruncationError("bitstream exhausted at bit " + std::to_string(pos_) + " of " +
                        std::to_string(limit_));
}

}  // namespace btn
