#pragma once

// Binary-ternary prefix code sets.
//
// Code set n holds all 3^n trit strings of length n, ordered by descending
// count of zero digits and then lexicographically (0 < 1 < 2). A codeword's
// bit signature substitutes 0 -> "0", 1 -> "10", 2 -> "11", so every member
// of the group with z zeros has bit length 2n - z. The list position of a
// codeword is computable from its trits (rank) and vice versa (unrank),
// which lets a decoder map codewords to letters without a code tree.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace btn {

class BitReader;

namespace codebook {

inline constexpr int kMaxSet = 40;

using Trits = std::vector<std::uint8_t>;

struct CodeSet {
  int n = 0;
  std::uint64_t m_min = 0;
  std::uint64_t m_max = 0;

  bool operator==(const CodeSet&) const = default;
};

// Alphabets of power 1 or 2 use the plain bit codes "0" and "1".
struct Degenerate {
  std::uint64_t m = 0;

  bool operator==(const Degenerate&) const = default;
};

using CodeSetChoice = std::variant<Degenerate, CodeSet>;

struct Codeword {
  Trits trits;
  std::string bits;
  std::uint64_t index = 0;  // 1-based
  int zeros = 0;
};

struct GroupParams {
  int z = 0;
  int length = 0;
  std::uint64_t size = 0;
};

std::uint64_t pow3(int n);

// Throws std::invalid_argument for n outside 1..kMaxSet.
CodeSet code_set(int n);

// m == 0 is rejected with std::invalid_argument.
CodeSetChoice code_set_for_alphabet(std::uint64_t m);

GroupParams group_params(int n, int z);

// First m codewords of set n in canonical order. Only m codewords are
// produced; the full set is never materialized.
std::vector<Codeword> generate_codes(int n, std::uint64_t m);

std::string trits_to_bits(std::span<const std::uint8_t> trits);

// Parses "0120" style text into digit values.
Trits parse_trits(std::string_view text);
std::string trits_to_string(std::span<const std::uint8_t> trits);

// Consumes exactly one codeword of set n from the reader.
Trits read_trits(BitReader& reader, int n);

// Precomputed group offsets and suffix counts for one code set.
// rank/unrank cost O(n) table lookups each.
class Ranker {
public:
  explicit Ranker(int n);

  int n() const { return n_; }

  // 1-based index of trits within set n.
  std::uint64_t rank(std::span<const std::uint8_t> trits) const;
  Trits unrank(std::uint64_t index) const;

  // Bit length of the codeword at 1-based index.
  int length_at(std::uint64_t index) const;

private:
  // Number of length-r trit strings with exactly k zeros; 0 if k > r.
  std::uint64_t count(int r, int k) const {
    return (k < 0 || k > r) ? 0 : counts_[static_cast<std::size_t>(r) * (n_ + 1) + k];
  }

  // Zero count of the group holding a valid 1-based index.
  int group_of(std::uint64_t index) const;

  int n_;
  std::vector<std::uint64_t> counts_;         // (n+1) x (n+1)
  std::vector<std::uint64_t> group_offset_;   // indexed by z: codes before group z
};

std::uint64_t rank(int n, std::span<const std::uint8_t> trits);
Trits unrank(int n, std::uint64_t index);

}  // namespace codebook
}  // namespace btn
