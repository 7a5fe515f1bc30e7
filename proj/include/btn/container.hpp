#pragma once

// BTN container, version 1. All integers little-endian.
//
//   offset  size  field
//   0       2     magic 0x42 0x33 ("B3")
//   2       1     version (low nibble, = 1) | flags (high nibble)
//   3       1     letter width L in bits, 1..32
//   4       8     original length of the input in bits
//   12      4     alphabet power m
//   16      ...   alphabet: m letters, ceil(L/8) bytes each, in rank order
//                 (flag bit 0 set: 4-byte length + nested container holding
//                 those packed letter bytes, compressed at L = 8)
//   ...     ...   payload: codewords packed MSB-first, zero-padded to a byte

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "btn/codec.hpp"

namespace btn::container {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::array<std::uint8_t, 2> kMagic{0x42, 0x33};
inline constexpr unsigned kVersion = 1;
inline constexpr unsigned kFlagAlphabetCompressed = 0x1;
inline constexpr std::size_t kHeaderSize = 12;
inline constexpr unsigned kMaxLetterBits = 32;

struct Header {
  unsigned version = kVersion;
  unsigned flags = 0;
  unsigned letter_bits = 8;
  std::uint64_t original_bit_length = 0;

  bool operator==(const Header&) const = default;
};

std::array<std::uint8_t, kHeaderSize> serialize_header(const Header& header);

// Throws FormatError on bad magic, unsupported version, unknown flags or
// letter width outside 1..32.
Header parse_header(std::span<const std::uint8_t> bytes);

struct Letters {
  std::vector<codec::Letter> letters;
  std::uint64_t original_bit_length = 0;
};

// Slices the input into L-bit letters, MSB-first; the last letter is
// zero-padded on the right.
Letters split_letters(std::span<const std::uint8_t> data, unsigned letter_bits);

// Inverse of split_letters.
Bytes join_letters(std::span<const codec::Letter> letters, unsigned letter_bits,
                   std::uint64_t original_bit_length);

struct Options {
  bool compress_alphabet = false;
};

Bytes compress(std::span<const std::uint8_t> data, unsigned letter_bits, Options options = {});

Bytes decompress(std::span<const std::uint8_t> container);

// Compresses an existing byte sequence (typically a container) again.
Bytes recompress(std::span<const std::uint8_t> data, unsigned letter_bits, Options options = {});

// Structural summary of a container, used by inspect and the bench.
struct Layout {
  Header header;
  std::uint64_t m = 0;
  int code_set = 0;  // 0 for degenerate and empty alphabets
  std::uint64_t letter_count = 0;
  std::size_t alphabet_offset = 0;  // start of the alphabet block (the m field)
  std::size_t alphabet_bytes = 0;   // whole block, m field included
  std::size_t payload_offset = 0;
  std::size_t payload_bytes = 0;
  std::vector<codec::Letter> alphabet;
};

// Parses everything but the payload.
Layout read_layout(std::span<const std::uint8_t> container);

// Exact payload bit count of a decodable container; runs the decoder.
std::uint64_t payload_bits(std::span<const std::uint8_t> container,
                           codec::DecodeStats* stats = nullptr);

}  // namespace btn::container
