#include <doctest.h>

#include <numeric>
#include <random>
#include <string>

#include "btn/container.hpp"
#include "btn/error.hpp"

using namespace btn::container;

namespace {

Bytes bytes_of(const std::string& text) { return {text.begin(), text.end()}; }

Bytes random_bytes(std::mt19937_64& rng, std::size_t length) {
  Bytes out(length);
  for (auto& b : out) {
    b = static_cast<std::uint8_t>(rng());
  }
  return out;
}

// Text-like bytes: few distinct values, skewed.
Bytes skewed_bytes(std::mt19937_64& rng, std::size_t length) {
  std::geometric_distribution<int> pick(0.15);
  Bytes out(length);
  for (auto& b : out) {
    b = static_cast<std::uint8_t>('a' + std::min(pick(rng), 40));
  }
  return out;
}

}  // namespace

TEST_CASE("split_letters") {
  auto s = split_letters(Bytes{0xB4}, 3);
  CHECK(s.letters == std::vector<btn::codec::Letter>{0b101, 0b101, 0b000});
  CHECK(s.original_bit_length == 8);

  const Bytes data{1, 2, 250, 0, 77};
  s = split_letters(data, 8);
  CHECK(s.letters == std::vector<btn::codec::Letter>(data.begin(), data.end()));

  s = split_letters(Bytes{0x12, 0x34, 0x56}, 16);
  CHECK(s.letters == std::vector<btn::codec::Letter>{0x1234, 0x5600});
  CHECK(s.original_bit_length == 24);

  s = split_letters(Bytes{0xDE, 0xAD, 0xBE, 0xEF, 0x01}, 32);
  CHECK(s.letters == std::vector<btn::codec::Letter>{0xDEADBEEF, 0x01000000});

  CHECK(split_letters(Bytes{}, 5).letters.empty());
  CHECK_THROWS_AS(split_letters(data, 0), std::invalid_argument);
  CHECK_THROWS_AS(split_letters(data, 33), std::invalid_argument);
}

TEST_CASE("join_letters inverts split_letters") {
  CHECK(join_letters(std::vector<btn::codec::Letter>{0b101, 0b101, 0b000}, 3, 8) == Bytes{0xB4});
  CHECK(join_letters(std::vector<btn::codec::Letter>{0x1234, 0x5600}, 16, 24) ==
        Bytes{0x12, 0x34, 0x56});
  CHECK(join_letters(std::vector<btn::codec::Letter>{}, 7, 0).empty());
  CHECK_THROWS_AS(join_letters(std::vector<btn::codec::Letter>{1, 2}, 8, 24),
                  std::invalid_argument);
  CHECK_THROWS_AS(join_letters(std::vector<btn::codec::Letter>{1, 2}, 16, 8),
                  std::invalid_argument);

  std::mt19937_64 rng(41);
  for (int round = 0; round < 1000; ++round) {
    const unsigned bits = 1 + round % 32;
    const auto data = random_bytes(rng, rng() % 40);
    const auto split = split_letters(data, bits);
    REQUIRE(join_letters(split.letters, bits, split.original_bit_length) == data);
  }
}

TEST_CASE("header layout") {
  Header h;
  h.flags = kFlagAlphabetCompressed;
  h.letter_bits = 16;
  h.original_bit_length = 0x0102030405060708ull;
  const auto bytes = serialize_header(h);
  CHECK(bytes == std::array<std::uint8_t, 12>{0x42, 0x33, 0x11, 0x10, 0x08, 0x07, 0x06, 0x05,
                                               0x04, 0x03, 0x02, 0x01});
  CHECK(parse_header(bytes) == h);

  for (unsigned bits = 1; bits <= 32; ++bits) {
    for (unsigned flags : {0u, 1u}) {
      Header x{kVersion, flags, bits, 12345ull * bits};
      REQUIRE(parse_header(serialize_header(x)) == x);
    }
  }

  auto bad = bytes;
  bad[0] = 0x50;
  CHECK_THROWS_AS(parse_header(bad), btn::FormatError);
  bad = bytes;
  bad[2] = 0x12;
  CHECK_THROWS_AS(parse_header(bad), btn::FormatError);
  bad = bytes;
  bad[2] = 0x21;
  CHECK_THROWS_AS(parse_header(bad), btn::FormatError);
  bad = bytes;
  bad[3] = 0;
  CHECK_THROWS_AS(parse_header(bad), btn::FormatError);
  bad[3] = 33;
  CHECK_THROWS_AS(parse_header(bad), btn::FormatError);
  CHECK_THROWS_AS(parse_header(std::span(bytes).first(11)), btn::FormatError);
}

TEST_CASE("empty input container") {
  const auto c = compress(Bytes{}, 8);
  CHECK(c == Bytes{0x42, 0x33, 0x01, 0x08, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(decompress(c).empty());
  const auto layout = read_layout(c);
  CHECK(layout.m == 0);
  CHECK(layout.letter_count == 0);
  CHECK(payload_bits(c) == 0);
}

TEST_CASE("worked example container is bit-exact") {
  const auto c = compress(bytes_of("ABCDEEFFGGHHHIII"), 8);
  const Bytes expected{
      0x42, 0x33, 0x01, 0x08, 0x80, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,  // header
      0x09, 0x00, 0x00, 0x00,                                                  // m
      'H',  'I',  'E',  'F',  'G',  'A',  'B',  'C',  'D',                     // alphabet
      0xAB, 0xEF, 0x6E, 0x4D, 0x80, 0x49, 0x00,                                // payload
  };
  CHECK(c == expected);
  CHECK(read_layout(c).payload_bytes == 7);
  CHECK(payload_bits(c) == 49);
  CHECK(decompress(c) == bytes_of("ABCDEEFFGGHHHIII"));
}

TEST_CASE("container size and padding") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const unsigned bits = 1 + round % 24;
    const auto data = skewed_bytes(rng, 1 + rng() % 3000);
    const auto c = compress(data, bits);
    const auto split = split_letters(data, bits);
    const auto model = btn::codec::build_model(split.letters);
    const std::uint64_t payload = btn::codec::payload_size(model);
    REQUIRE(c.size() == 12 + 4 + model.m() * ((bits + 7) / 8) + (payload + 7) / 8);
    btn::codec::DecodeStats stats;
    REQUIRE(payload_bits(c, &stats) == payload);
    const auto layout = read_layout(c);
    const std::uint64_t padding = std::uint64_t{layout.payload_bytes} * 8 - payload;
    REQUIRE(padding <= 7);
    if (padding > 0) {
      REQUIRE((c.back() & ((1u << padding) - 1)) == 0);
    }
    REQUIRE(compress(data, bits) == c);
  }
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(99);
  SUBCASE("random data, all widths 1..20") {
    for (int round = 0; round < 1000; ++round) {
      const unsigned bits = 1 + round % 20;
      const auto data = round % 3 == 0 ? random_bytes(rng, rng() % 500)
                                       : skewed_bytes(rng, rng() % 500);
      REQUIRE(decompress(compress(data, bits)) == data);
    }
  }
  SUBCASE("edge inputs") {
    for (unsigned bits = 1; bits <= 32; ++bits) {
      REQUIRE(decompress(compress(Bytes{}, bits)).empty());
      REQUIRE(decompress(compress(Bytes{0x5A}, bits)) == Bytes{0x5A});
      const Bytes same(100, 0x00);
      REQUIRE(decompress(compress(same, bits)) == same);
      const Bytes two = bytes_of("abababababbbba");
      REQUIRE(decompress(compress(two, bits)) == two);
    }
    Bytes distinct(256);
    std::iota(distinct.begin(), distinct.end(), 0);
    REQUIRE(decompress(compress(distinct, 8)) == distinct);
    CHECK(read_layout(compress(Bytes(50, 7), 8)).m == 1);
    CHECK(read_layout(compress(bytes_of("xyyx"), 8)).m == 2);
  }
  SUBCASE("incompressible data may expand") {
    const auto data = random_bytes(rng, 4096);
    const auto c = compress(data, 8);
    CHECK(c.size() > data.size());
    CHECK(decompress(c) == data);
  }
}

TEST_CASE("alphabet compression") {
  std::mt19937_64 rng(5);
  // Wide letters with many distinct values give a sizeable, compressible alphabet.
  const auto data = skewed_bytes(rng, 20000);
  const auto plain = compress(data, 16);
  const auto packed = compress(data, 16, Options{true});
  const auto layout = read_layout(packed);
  if (packed.size() < plain.size()) {
    CHECK((layout.header.flags & kFlagAlphabetCompressed) != 0);
  } else {
    CHECK(packed == plain);
  }
  CHECK(decompress(packed) == data);
  CHECK(read_layout(plain).alphabet == layout.alphabet);

  // Tiny alphabet: compressing it cannot pay off, raw fallback.
  const auto small = compress(bytes_of("aaab"), 8, Options{true});
  CHECK(read_layout(small).header.flags == 0);
  CHECK(small == compress(bytes_of("aaab"), 8));

  for (int round = 0; round < 100; ++round) {
    const auto d = skewed_bytes(rng, 1 + rng() % 5000);
    const unsigned bits = 9 + round % 16;
    REQUIRE(decompress(compress(d, bits, Options{true})) == d);
  }
}

TEST_CASE("malformed containers") {
  const auto good = compress(bytes_of("ABCDEEFFGGHHHIII"), 8);

  SUBCASE("not a container") {
    CHECK_THROWS_AS(decompress(bytes_of("hello, world")), btn::FormatError);
    CHECK_THROWS_AS(decompress(Bytes{0x42}), btn::FormatError);
  }
  SUBCASE("truncated alphabet") {
    CHECK_THROWS_AS(decompress(std::span(good).first(14)), btn::FormatError);
    CHECK_THROWS_AS(decompress(std::span(good).first(20)), btn::FormatError);
  }
  SUBCASE("truncated payload") {
    CHECK_THROWS_AS(decompress(std::span(good).first(good.size() - 2)), btn::TruncationError);
    CHECK_THROWS_AS(decompress(std::span(good).first(25)), btn::TruncationError);
  }
  SUBCASE("extra payload bytes") {
    auto c = good;
    c.push_back(0);
    CHECK_THROWS_AS(decompress(c), btn::CorruptionError);
  }
  SUBCASE("duplicate alphabet letters") {
    auto c = good;
    c[17] = c[16];
    CHECK_THROWS_AS(decompress(c), btn::FormatError);
  }
  SUBCASE("alphabet power beyond the letter width") {
    auto c = compress(Bytes{0xFF}, 1);
    c[12] = 3;
    CHECK_THROWS_AS(decompress(c), btn::FormatError);
  }
  SUBCASE("alphabet power beyond the letter count") {
    auto c = good;
    c[4] = 0x08;  // 8 bits: one letter, m = 9
    CHECK_THROWS_AS(decompress(c), btn::FormatError);
  }
  SUBCASE("index beyond the alphabet") {
    // 4 letters use set 2; codeword 9 is "1111".
    auto c = compress(bytes_of("ABCD"), 8);
    c[c.size() - 1] = 0xF0;
    CHECK_THROWS_AS(decompress(c), btn::CorruptionError);
  }
  SUBCASE("corrupted first payload byte never yields a wrong-length result") {
    std::mt19937_64 rng(1);
    for (int round = 0; round < 200; ++round) {
      const auto data = skewed_bytes(rng, 50 + rng() % 200);
      auto c = compress(data, 8);
      const auto layout = read_layout(c);
      c[layout.payload_offset] ^= static_cast<std::uint8_t>(1 + rng() % 255);
      try {
        const auto out = decompress(c);
        REQUIRE(out.size() == data.size());
      } catch (const btn::CorruptionError&) {
      }
    }
  }
}

TEST_CASE("recompress equals compress of the raw bytes") {
  std::mt19937_64 rng(23);
  const auto data = skewed_bytes(rng, 5000);
  const auto first = compress(data, 8);
  for (unsigned bits : {3u, 6u, 9u}) {
    const auto second = recompress(first, bits);
    CHECK(second == compress(first, bits));
    CHECK(decompress(decompress(second)) == data);
  }
  const auto noise = random_bytes(rng, 2000);
  const auto again = recompress(compress(noise, 8), 8);
  CHECK(decompress(decompress(again)) == noise);
}
