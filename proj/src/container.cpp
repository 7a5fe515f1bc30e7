#include "btn/container.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

#include "btn/error.hpp"

namespace btn::container {
namespace {

void check_letter_bits(unsigned letter_bits) {
  if (letter_bits < 1 || letter_bits > kMaxLetterBits) {
    throw std::invalid_argument("letter width must be in 1..32, got " +
                                std::to_string(letter_bits));
  }
}

unsigned letter_bytes(unsigned letter_bits) { return (letter_bits + 7) / 8; }

void put_le(Bytes& out, std::uint64_t value, unsigned bytes) {
  for (unsigned i = 0; i < bytes; ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t offset, unsigned bytes) {
  std::uint64_t value = 0;
  for (unsigned i = 0; i < bytes; ++i) {
    value |= std::uint64_t{in[offset + i]} << (8 * i);
  }
  return value;
}

std::uint64_t letter_count_for(std::uint64_t bit_length, unsigned letter_bits) {
  return bit_length / letter_bits + (bit_length % letter_bits != 0);
}

Bytes pack_alphabet(std::span<const codec::Letter> letters, unsigned letter_bits) {
  Bytes out;
  out.reserve(letters.size() * letter_bytes(letter_bits));
  for (auto letter : letters) {
    put_le(out, letter, letter_bytes(letter_bits));
  }
  return out;
}

Bytes compress_impl(std::span<const std::uint8_t> data, unsigned letter_bits, Options options) {
  check_letter_bits(letter_bits);
  const auto split = split_letters(data, letter_bits);

  Header header;
  header.letter_bits = letter_bits;
  header.original_bit_length = split.original_bit_length;

  if (split.letters.empty()) {
    const auto head = serialize_header(header);
    Bytes out(head.begin(), head.end());
    put_le(out, 0, 4);
    return out;
  }

  const auto model = codec::build_model(split.letters);
  const Bytes raw_alphabet = pack_alphabet(model.letters, letter_bits);

  Bytes alphabet_block;
  put_le(alphabet_block, model.m(), 4);
  bool stored_compressed = false;
  if (options.compress_alphabet) {
    const Bytes nested = compress_impl(raw_alphabet, 8, Options{});
    if (4 + nested.size() < raw_alphabet.size()) {
      put_le(alphabet_block, nested.size(), 4);
      alphabet_block.insert(alphabet_block.end(), nested.begin(), nested.end());
      stored_compressed = true;
    }
  }
  if (!stored_compressed) {
    alphabet_block.insert(alphabet_block.end(), raw_alphabet.begin(), raw_alphabet.end());
  }
  header.flags = stored_compressed ? kFlagAlphabetCompressed : 0;

  const PackedBits payload = codec::encode(split.letters, model);

  const auto head = serialize_header(header);
  Bytes out;
  out.reserve(kHeaderSize + alphabet_block.size() + payload.bytes.size());
  out.insert(out.end(), head.begin(), head.end());
  out.insert(out.end(), alphabet_block.begin(), alphabet_block.end());
  out.insert(out.end(), payload.bytes.begin(), payload.bytes.end());
  return out;
}

}  // namespace

std::array<std::uint8_t, kHeaderSize> serialize_header(const Header& header) {
  if (header.version > 0xF || header.flags > 0xF) {
    throw std::invalid_argument("version and flags must each fit in a nibble");
  }
  std::array<std::uint8_t, kHeaderSize> out{};
  out[0] = kMagic[0];
  out[1] = kMagic[1];
  out[2] = static_cast<std::uint8_t>(header.version | (header.flags << 4));
  out[3] = static_cast<std::uint8_t>(header.letter_bits);
  for (unsigned i = 0; i < 8; ++i) {
    out[4 + i] = static_cast<std::uint8_t>(header.original_bit_length >> (8 * i));
  }
  return out;
}

Header parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw FormatError("truncated header: " + std::to_string(bytes.size()) + " of " +
                      std::to_string(kHeaderSize) + " bytes");
  }
  if (bytes[0] != kMagic[0] || bytes[1] != kMagic[1]) {
    throw FormatError("bad magic at offset 0: not a BTN container");
  }
  Header header;
  header.version = bytes[2] & 0xF;
  header.flags = bytes[2] >> 4;
  if (header.version != kVersion) {
    throw FormatError("unsupported version " + std::to_string(header.version) + " at offset 2");
  }
  if ((header.flags & ~kFlagAlphabetCompressed) != 0) {
    throw FormatError("unknown flags 0x" + std::to_string(header.flags) + " at offset 2");
  }
  header.letter_bits = bytes[3];
  if (header.letter_bits < 1 || header.letter_bits > kMaxLetterBits) {
    throw FormatError("letter width " + std::to_string(header.letter_bits) +
                      " out of range at offset 3");
  }
  header.original_bit_length = get_le(bytes, 4, 8);
  return header;
}

Letters split_letters(std::span<const std::uint8_t> data, unsigned letter_bits) {
  check_letter_bits(letter_bits);
  Letters out;
  out.original_bit_length = std::uint64_t{data.size()} * 8;
  if (letter_bits == 8) {
    out.letters.assign(data.begin(), data.end());
    return out;
  }
  out.letters.reserve(letter_count_for(out.original_bit_length, letter_bits));
  BitReader reader(data);
  while (reader.remaining() >= letter_bits) {
    out.letters.push_back(static_cast<codec::Letter>(reader.read(letter_bits)));
  }
  if (const auto tail = static_cast<unsigned>(reader.remaining()); tail > 0) {
    out.letters.push_back(static_cast<codec::Letter>(reader.read(tail) << (letter_bits - tail)));
  }
  return out;
}

Bytes join_letters(std::span<const codec::Letter> letters, unsigned letter_bits,
                   std::uint64_t original_bit_length) {
  check_letter_bits(letter_bits);
  if (letter_count_for(original_bit_length, letter_bits) != letters.size()) {
    throw std::invalid_argument(std::to_string(letters.size()) + " letters of " +
                                std::to_string(letter_bits) + " bits cannot hold " +
                                std::to_string(original_bit_length) + " bits");
  }
  if (letter_bits == 8) {
    return Bytes(letters.begin(), letters.end());
  }
  BitWriter writer;
  for (auto letter : letters) {
    writer.write(letter, letter_bits);
  }
  PackedBits bits = writer.finish();
  bits.bytes.resize(original_bit_length / 8 + (original_bit_length % 8 != 0));
  if (const unsigned tail = original_bit_length % 8; tail != 0) {
    bits.bytes.back() &= static_cast<std::uint8_t>(0xFF << (8 - tail));
  }
  return std::move(bits.bytes);
}

Bytes compress(std::span<const std::uint8_t> data, unsigned letter_bits, Options options) {
  return compress_impl(data, letter_bits, options);
}

Bytes recompress(std::span<const std::uint8_t> data, unsigned letter_bits, Options options) {
  return compress_impl(data, letter_bits, options);
}

Layout read_layout(std::span<const std::uint8_t> container) {
  Layout layout;
  layout.header = parse_header(container);
  const auto& header = layout.header;
  layout.letter_count = letter_count_for(header.original_bit_length, header.letter_bits);

  std::size_t pos = kHeaderSize;
  layout.alphabet_offset = pos;
  if (container.size() < pos + 4) {
    throw FormatError("truncated alphabet block at offset " + std::to_string(pos));
  }
  layout.m = get_le(container, pos, 4);
  pos += 4;

  const std::uint64_t max_letters = std::uint64_t{1} << header.letter_bits;
  if (layout.m > max_letters) {
    throw FormatError("alphabet power " + std::to_string(layout.m) + " exceeds 2^" +
                      std::to_string(header.letter_bits) + " at offset 12");
  }
  if ((layout.m == 0) != (layout.letter_count == 0) || layout.m > layout.letter_count) {
    throw FormatError("alphabet power " + std::to_string(layout.m) +
                      " inconsistent with " + std::to_string(layout.letter_count) +
                      " letters at offset 12");
  }

  const unsigned width = letter_bytes(header.letter_bits);
  const std::uint64_t raw_size = layout.m * width;
  Bytes raw;
  if ((header.flags & kFlagAlphabetCompressed) != 0) {
    if (layout.m == 0) {
      throw FormatError("compressed alphabet flag set on an empty container");
    }
    if (container.size() < pos + 4) {
      throw FormatError("truncated compressed alphabet length at offset " + std::to_string(pos));
    }
    const std::uint64_t nested_size = get_le(container, pos, 4);
    pos += 4;
    if (container.size() - pos < nested_size) {
      throw FormatError("truncated compressed alphabet at offset " + std::to_string(pos));
    }
    const auto nested = container.subspan(pos, nested_size);
    if (nested.size() >= 3 && (nested[2] >> 4) != 0) {
      throw FormatError("nested alphabet container may not itself compress its alphabet");
    }
    try {
      raw = decompress(nested);
    } catch (const Error& e) {
      throw FormatError(std::string("compressed alphabet at offset ") + std::to_string(pos) +
                        ": " + e.what());
    }
    if (raw.size() != raw_size) {
      throw FormatError("compressed alphabet expands to " + std::to_string(raw.size()) +
                        " bytes, expected " + std::to_string(raw_size));
    }
    pos += nested_size;
  } else {
    if (container.size() - pos < raw_size) {
      throw FormatError("truncated alphabet at offset " + std::to_string(pos) + ": need " +
                        std::to_string(raw_size) + " bytes");
    }
    raw.assign(container.begin() + static_cast<std::ptrdiff_t>(pos),
               container.begin() + static_cast<std::ptrdiff_t>(pos + raw_size));
    pos += raw_size;
  }

  layout.alphabet.reserve(layout.m);
  std::unordered_set<codec::Letter> seen;
  seen.reserve(layout.m);
  for (std::uint64_t i = 0; i < layout.m; ++i) {
    const std::uint64_t letter = get_le(raw, i * width, width);
    if (letter >= max_letters) {
      throw FormatError("alphabet letter " + std::to_string(i) + " exceeds " +
                        std::to_string(header.letter_bits) + " bits");
    }
    if (!seen.insert(static_cast<codec::Letter>(letter)).second) {
      throw FormatError("duplicate alphabet letter " + std::to_string(letter) + " at rank " +
                        std::to_string(i + 1));
    }
    layout.alphabet.push_back(static_cast<codec::Letter>(letter));
  }

  layout.alphabet_bytes = pos - layout.alphabet_offset;
  layout.payload_offset = pos;
  layout.payload_bytes = container.size() - pos;
  if (layout.m >= 3) {
    layout.code_set = std::get<codebook::CodeSet>(codebook::code_set_for_alphabet(layout.m)).n;
  }
  return layout;
}

namespace {

std::vector<codec::Letter> decode_payload(std::span<const std::uint8_t> container,
                                          const Layout& layout, std::uint64_t* bits_used,
                                          codec::DecodeStats* stats) {
  const auto payload = container.subspan(layout.payload_offset, layout.payload_bytes);
  // Every codeword takes at least one bit.
  if (layout.letter_count > std::uint64_t{payload.size()} * 8) {
    throw TruncationError("payload of " + std::to_string(payload.size()) +
                          " bytes cannot hold " + std::to_string(layout.letter_count) +
                          " letters");
  }
  BitReader reader(payload);
  auto letters = codec::decode(reader, layout.alphabet, layout.letter_count, stats);
  codec::expect_padding(reader);
  if (bits_used != nullptr) {
    *bits_used = reader.position();
  }
  return letters;
}

}  // namespace

Bytes decompress(std::span<const std::uint8_t> container) {
  const Layout layout = read_layout(container);
  if (layout.letter_count == 0) {
    if (layout.payload_bytes != 0) {
      throw CorruptionError("empty container carries " + std::to_string(layout.payload_bytes) +
                            " payload bytes");
    }
    return {};
  }
  const auto letters = decode_payload(container, layout, nullptr, nullptr);
  return join_letters(letters, layout.header.letter_bits, layout.header.original_bit_length);
}

std::uint64_t payload_bits(std::span<const std::uint8_t> container, codec::DecodeStats* stats) {
  const Layout layout = read_layout(container);
  if (layout.letter_count == 0) {
    return 0;
  }
  std::uint64_t bits = 0;
  decode_payload(container, layout, &bits, stats);
  return bits;
}

}  // namespace btn::container
