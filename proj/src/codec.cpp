#include "btn/codec.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "btn/error.hpp"

namespace btn::codec {
namespace {

// Letter -> 0-based rank. Dense table for small letter values.
class RankLookup {
public:
  explicit RankLookup(std::span<const Letter> letters) {
    const Letter max = letters.empty() ? 0 : *std::max_element(letters.begin(), letters.end());
    if (max < kDenseLimit) {
      dense_.assign(std::size_t{max} + 1, kAbsent);
      for (std::size_t r = 0; r < letters.size(); ++r) {
        dense_[letters[r]] = static_cast<std::uint32_t>(r);
      }
    } else {
      sparse_.reserve(letters.size());
      for (std::size_t r = 0; r < letters.size(); ++r) {
        sparse_.emplace(letters[r], static_cast<std::uint32_t>(r));
      }
    }
  }

  std::uint32_t operator()(Letter letter) const {
    std::uint32_t r = kAbsent;
    if (!dense_.empty()) {
      if (letter < dense_.size()) {
        r = dense_[letter];
      }
    } else if (auto it = sparse_.find(letter); it != sparse_.end()) {
      r = it->second;
    }
    if (r == kAbsent) {
      throw std::invalid_argument("letter " + std::to_string(letter) + " is not in the model");
    }
    return r;
  }

private:
  static constexpr Letter kDenseLimit = Letter{1} << 20;
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;

  std::vector<std::uint32_t> dense_;
  std::unordered_map<Letter, std::uint32_t> sparse_;
};

}  // namespace

Model build_model(std::span<const Letter> input) {
  if (input.empty()) {
    throw std::invalid_argument("cannot build a model from empty input");
  }
  struct Entry {
    Letter letter;
    std::uint64_t count;
    std::uint64_t first;
  };
  std::vector<Entry> entries;
  std::unordered_map<Letter, std::size_t> slot;
  for (std::uint64_t pos = 0; pos < input.size(); ++pos) {
    const Letter letter = input[pos];
    auto [it, inserted] = slot.try_emplace(letter, entries.size());
    if (inserted) {
      entries.push_back(Entry{letter, 1, pos});
    } else {
      entries[it->second].count++;
    }
  }
  // Entries are already in first-occurrence order, so a stable sort on count
  // gives the tie-break for free.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.count > b.count; });

  Model model;
  model.letters.reserve(entries.size());
  model.counts.reserve(entries.size());
  for (const auto& e : entries) {
    model.letters.push_back(e.letter);
    model.counts.push_back(e.count);
  }
  model.code_set = codebook::code_set_for_alphabet(model.m());
  return model;
}

std::vector<PackedCode> code_table(const codebook::CodeSetChoice& set, std::uint64_t m) {
  std::vector<PackedCode> table;
  if (std::holds_alternative<codebook::Degenerate>(set)) {
    if (m > 2) {
      throw std::invalid_argument("degenerate code set holds at most 2 codes");
    }
    for (std::uint64_t r = 0; r < m; ++r) {
      table.push_back(PackedCode{r, 1});
    }
    return table;
  }
  const int n = std::get<codebook::CodeSet>(set).n;
  if (n > 32) {
    throw std::invalid_argument("code set " + std::to_string(n) + " exceeds 64-bit codewords");
  }
  table.reserve(m);
  for (const auto& cw : codebook::generate_codes(n, m)) {
    PackedCode code;
    for (char c : cw.bits) {
      code.bits = (code.bits << 1) | (c == '1' ? 1u : 0u);
    }
    code.length = static_cast<unsigned>(cw.bits.size());
    table.push_back(code);
  }
  return table;
}

PackedBits encode(std::span<const Letter> input, const Model& model) {
  const auto table = code_table(model.code_set, model.m());
  const RankLookup lookup(model.letters);
  BitWriter writer;
  for (Letter letter : input) {
    const auto& code = table[lookup(letter)];
    writer.write(code.bits, code.length);
  }
  return writer.finish();
}

std::uint64_t payload_size(const Model& model) {
  if (std::holds_alternative<codebook::Degenerate>(model.code_set)) {
    return std::accumulate(model.counts.begin(), model.counts.end(), std::uint64_t{0});
  }
  // Walk the groups: ranks within one group share a length.
  const int n = std::get<codebook::CodeSet>(model.code_set).n;
  std::uint64_t total = 0;
  std::size_t r = 0;
  for (int z = n; z >= 0 && r < model.counts.size(); --z) {
    const auto group = codebook::group_params(n, z);
    for (std::uint64_t k = 0; k < group.size && r < model.counts.size(); ++k, ++r) {
      total += model.counts[r] * static_cast<std::uint64_t>(group.length);
    }
  }
  return total;
}

std::vector<Letter> decode(BitReader& reader, std::span<const Letter> alphabet,
                           std::uint64_t letter_count, DecodeStats* stats) {
  if (alphabet.empty()) {
    if (letter_count == 0) {
      return {};
    }
    throw CorruptionError("letters declared but the alphabet is empty");
  }
  std::vector<Letter> out;
  out.reserve(letter_count);
  const std::uint64_t m = alphabet.size();
  const std::uint64_t start = reader.position();
  DecodeStats local;

  if (m <= 2) {
    for (std::uint64_t i = 0; i < letter_count; ++i) {
      const bool bit = reader.read_bit();
      if (bit && m == 1) {
        throw CorruptionError("single-letter stream holds a '1' bit at letter " +
                              std::to_string(i));
      }
      out.push_back(alphabet[bit ? 1 : 0]);
      ++local.codewords;
    }
  } else {
    const int n = std::get<codebook::CodeSet>(codebook::code_set_for_alphabet(m)).n;
    const codebook::Ranker ranker(n);
    std::array<std::uint8_t, codebook::kMaxSet> trits{};
    const std::span<const std::uint8_t> word(trits.data(), static_cast<std::size_t>(n));
    for (std::uint64_t i = 0; i < letter_count; ++i) {
      for (int t = 0; t < n; ++t) {
        trits[t] = reader.read_bit() ? (reader.read_bit() ? 2 : 1) : 0;
        ++local.trit_reads;
      }
      const std::uint64_t index = ranker.rank(word);
      ++local.rank_computations;
      if (index > m) {
        throw CorruptionError("codeword index " + std::to_string(index) +
                              " exceeds alphabet power " + std::to_string(m) + " at letter " +
                              std::to_string(i));
      }
      out.push_back(alphabet[index - 1]);
      ++local.codewords;
    }
  }
  local.bit_reads = reader.position() - start;
  if (stats != nullptr) {
    stats->codewords += local.codewords;
    stats->trit_reads += local.trit_reads;
    stats->bit_reads += local.bit_reads;
    stats->rank_computations += local.rank_computations;
  }
  return out;
}

std::vector<Letter> decode(const PackedBits& bits, std::span<const Letter> alphabet,
                           std::uint64_t letter_count, DecodeStats* stats) {
  BitReader reader(bits);
  auto out = decode(reader, alphabet, letter_count, stats);
  expect_padding(reader);
  return out;
}

void expect_padding(BitReader reader) {
  const std::uint64_t left = reader.remaining();
  if (left >= 8) {
    throw CorruptionError(std::to_string(left) + " bits follow the last codeword");
  }
  if (left > 0 && reader.read(static_cast<unsigned>(left)) != 0) {
    throw CorruptionError("non-zero padding after the last codeword");
  }
}

}  // namespace btn::codec
