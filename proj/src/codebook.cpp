#include "btn/codebook.hpp"

#include <stdexcept>

#include "btn/bitio.hpp"

namespace btn::codebook {
namespace {

void check_set(int n) {
  if (n < 1 || n > kMaxSet) {
    throw std::invalid_argument("code set number must be in 1.." + std::to_string(kMaxSet) +
                                ", got " + std::to_string(n));
  }
}

void check_trits(int n, std::span<const std::uint8_t> trits) {
  if (trits.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("expected " + std::to_string(n) + " trits, got " +
                                std::to_string(trits.size()));
  }
  for (auto t : trits) {
    if (t > 2) {
      throw std::invalid_argument("trit digit out of range: " + std::to_string(t));
    }
  }
}

// Pascal's triangle row by row; C(40, 20) fits comfortably in 64 bits.
std::vector<std::vector<std::uint64_t>> binomials(int n) {
  std::vector<std::vector<std::uint64_t>> c(n + 1);
  for (int r = 0; r <= n; ++r) {
    c[r].assign(r + 1, 1);
    for (int k = 1; k < r; ++k) {
      c[r][k] = c[r - 1][k - 1] + c[r - 1][k];
    }
  }
  return c;
}

// Lexicographic successor among length-n trit strings with a fixed number of
// zeros. Returns false when `t` is the last one.
bool next_in_group(Trits& t, int zeros) {
  const int n = static_cast<int>(t.size());
  int prefix_zeros = 0;
  for (int i = 0; i < n; ++i) {
    prefix_zeros += t[i] == 0;
  }
  for (int i = n - 1; i >= 0; --i) {
    prefix_zeros -= t[i] == 0;
    const int rest = n - i - 1;
    // Any raised digit is nonzero, so the suffix must carry the remaining zeros.
    const int need = zeros - prefix_zeros;
    if (t[i] < 2 && need >= 0 && need <= rest) {
      t[i] = static_cast<std::uint8_t>(t[i] + 1);
      // Smallest completion: zeros first, then ones.
      for (int j = i + 1; j <= n - 1; ++j) {
        t[j] = (j - i - 1) < need ? 0 : 1;
      }
      return true;
    }
  }
  return false;
}

Trits first_in_group(int n, int zeros) {
  Trits t(n, 1);
  for (int i = 0; i < zeros; ++i) {
    t[i] = 0;
  }
  return t;
}

int count_zeros(std::span<const std::uint8_t> trits) {
  int z = 0;
  for (auto t : trits) {
    z += t == 0;
  }
  return z;
}

}  // namespace

std::uint64_t pow3(int n) {
  if (n < 0 || n > kMaxSet) {
    throw std::invalid_argument("pow3 exponent out of range");
  }
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) {
    v *= 3;
  }
  return v;
}

CodeSet code_set(int n) {
  check_set(n);
  const std::uint64_t max = pow3(n);
  const std::uint64_t min = n == 1 ? 3 : pow3(n - 1) + 1;
  return CodeSet{n, min, max};
}

CodeSetChoice code_set_for_alphabet(std::uint64_t m) {
  if (m == 0) {
    throw std::invalid_argument("alphabet power must be at least 1");
  }
  if (m <= 2) {
    return Degenerate{m};
  }
  for (int n = 1; n <= kMaxSet; ++n) {
    if (m <= pow3(n)) {
      return code_set(n);
    }
  }
  throw std::invalid_argument("alphabet power " + std::to_string(m) + " exceeds 3^" +
                              std::to_string(kMaxSet));
}

GroupParams group_params(int n, int z) {
  check_set(n);
  if (z < 0 || z > n) {
    throw std::invalid_argument("zero count " + std::to_string(z) + " outside 0.." +
                                std::to_string(n));
  }
  const auto c = binomials(n);
  return GroupParams{z, 2 * n - z, c[n][z] << (n - z)};
}

std::vector<Codeword> generate_codes(int n, std::uint64_t m) {
  check_set(n);
  if (m < 1 || m > pow3(n)) {
    throw std::invalid_argument("cannot take " + std::to_string(m) + " codes from set " +
                                std::to_string(n));
  }
  std::vector<Codeword> out;
  out.reserve(m);
  for (int z = n; z >= 0 && out.size() < m; --z) {
    Trits t = first_in_group(n, z);
    do {
      out.push_back(Codeword{t, trits_to_bits(t), out.size() + 1, z});
    } while (out.size() < m && next_in_group(t, z));
  }
  return out;
}

std::string trits_to_bits(std::span<const std::uint8_t> trits) {
  std::string out;
  out.reserve(trits.size() * 2);
  for (auto t : trits) {
    switch (t) {
      case 0: out += '0'; break;
      case 1: out += "10"; break;
      case 2: out += "11"; break;
      default: throw std::invalid_argument("trit digit out of range: " + std::to_string(t));
    }
  }
  return out;
}

Trits parse_trits(std::string_view text) {
  Trits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '2') {
      throw std::invalid_argument(std::string("invalid trit character '") + c + "'");
    }
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string trits_to_string(std::span<const std::uint8_t> trits) {
  std::string out;
  out.reserve(trits.size());
  for (auto t : trits) {
    out.push_back(static_cast<char>('0' + t));
  }
  return out;
}

Trits read_trits(BitReader& reader, int n) {
  Trits out(n);
  for (int i = 0; i < n; ++i) {
    if (!reader.read_bit()) {
      out[i] = 0;
    } else {
      out[i] = reader.read_bit() ? 2 : 1;
    }
  }
  return out;
}

Ranker::Ranker(int n) : n_(n) {
  check_set(n);
  const auto c = binomials(n);
  counts_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (int r = 0; r <= n; ++r) {
    for (int k = 0; k <= r; ++k) {
      counts_[static_cast<std::size_t>(r) * (n + 1) + k] = c[r][k] << (r - k);
    }
  }
  group_offset_.assign(n + 1, 0);
  std::uint64_t acc = 0;
  for (int z = n; z >= 0; --z) {
    group_offset_[z] = acc;
    acc += count(n, z);
  }
}

int Ranker::group_of(std::uint64_t index) const {
  int zeros = n_;
  while (index > group_offset_[zeros] + count(n_, zeros)) {
    --zeros;
  }
  return zeros;
}

std::uint64_t Ranker::rank(std::span<const std::uint8_t> trits) const {
  check_trits(n_, trits);
  const int zeros = count_zeros(trits);
  std::uint64_t within = 0;
  int prefix_zeros = 0;
  for (int i = 0; i < n_; ++i) {
    const int rest = n_ - i - 1;
    const int need = zeros - prefix_zeros;
    // Strings sharing the prefix but with a smaller digit here.
    if (trits[i] >= 1) {
      within += count(rest, need - 1);  // digit 0
    }
    if (trits[i] == 2) {
      within += count(rest, need);  // digit 1
    }
    prefix_zeros += trits[i] == 0;
  }
  return group_offset_[zeros] + within + 1;
}

Trits Ranker::unrank(std::uint64_t index) const {
  if (index < 1 || index > pow3(n_)) {
    throw std::invalid_argument("index " + std::to_string(index) + " outside 1..3^" +
                                std::to_string(n_));
  }
  const int zeros = group_of(index);
  std::uint64_t within = index - 1 - group_offset_[zeros];
  Trits out(n_);
  int left = zeros;  // zeros still to place
  for (int i = 0; i < n_; ++i) {
    const int rest = n_ - i - 1;
    for (std::uint8_t d = 0; d <= 2; ++d) {
      const std::uint64_t c = count(rest, left - (d == 0 ? 1 : 0));
      if (within < c) {
        out[i] = d;
        left -= d == 0;
        break;
      }
      within -= c;
    }
  }
  return out;
}

int Ranker::length_at(std::uint64_t index) const {
  if (index < 1 || index > pow3(n_)) {
    throw std::invalid_argument("index out of range");
  }
  return 2 * n_ - group_of(index);
}

std::uint64_t rank(int n, std::span<const std::uint8_t> trits) {
  return Ranker(n).rank(trits);
}

Trits unrank(int n, std::uint64_t index) {
  return Ranker(n).unrank(index);
}

}  // namespace btn::codebook
