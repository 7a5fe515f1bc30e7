#pragma once

// Static two-pass coder. The first pass ranks letters by descending count;
// the letter at rank r receives codeword r of the code set chosen by the
// alphabet power. Decoding reads n trits per codeword and computes the
// codeword's rank directly, so no code tree is ever built.

#include <cstdint>
#include <span>
#include <vector>

#include "btn/bitio.hpp"
#include "btn/codebook.hpp"

namespace btn::codec {

using Letter = std::uint32_t;

struct Model {
  std::vector<Letter> letters;         // distinct, in rank order
  std::vector<std::uint64_t> counts;   // non-increasing
  codebook::CodeSetChoice code_set;

  std::uint64_t m() const { return letters.size(); }
};

// Descending count, ties by earliest first occurrence. Throws
// std::invalid_argument on empty input.
Model build_model(std::span<const Letter> input);

// Packed bit signature of one codeword. Codes longer than 64 bits would need
// n > 32, i.e. more than 3^31 distinct letters.
struct PackedCode {
  std::uint64_t bits = 0;
  unsigned length = 0;
};

// Signatures for ranks 1..m (element 0 is rank 1).
std::vector<PackedCode> code_table(const codebook::CodeSetChoice& set, std::uint64_t m);

// Throws std::invalid_argument if a letter is missing from the model.
PackedBits encode(std::span<const Letter> input, const Model& model);

// Sum over ranks of count * code length; equals encode(...).size.
std::uint64_t payload_size(const Model& model);

struct DecodeStats {
  std::uint64_t codewords = 0;
  std::uint64_t trit_reads = 0;
  std::uint64_t bit_reads = 0;
  std::uint64_t rank_computations = 0;
};

// Decodes exactly letter_count letters from the front of `reader`.
// Throws CorruptionError for an index beyond the alphabet and
// TruncationError when bits run out.
std::vector<Letter> decode(BitReader& reader, std::span<const Letter> alphabet,
                           std::uint64_t letter_count, DecodeStats* stats = nullptr);

// Whole-buffer form: after the last codeword only zero padding (< 8 bits)
// may remain, otherwise CorruptionError.
std::vector<Letter> decode(const PackedBits& bits, std::span<const Letter> alphabet,
                           std::uint64_t letter_count, DecodeStats* stats = nullptr);

// Checks that what remains in the reader is fewer than 8 zero bits.
void expect_padding(BitReader reader);

}  // namespace btn::codec
