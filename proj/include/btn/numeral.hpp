#pragma once

// Tabular and economical number forms, and the compactness estimate for
// economical base-b representations.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace btn::numeral {

using Digits = std::vector<unsigned>;

// Most-significant-first digits of value >= 1 in base b >= 2.
Digits to_positional(std::uint64_t value, unsigned base);
std::uint64_t from_positional(const Digits& digits, unsigned base);

// b rows by c columns; cell(i, j) is set when digit j equals i.
struct TabularForm {
  unsigned base = 0;
  Digits digits;
  std::vector<std::vector<std::uint8_t>> cells;  // [row][column]

  std::size_t columns() const { return digits.size(); }
  unsigned row_sum(unsigned row) const;
};

TabularForm tabular_form(std::uint64_t value, unsigned base);

// Digit value whose row holds the most ones; ties go to the smaller digit.
unsigned dominant_row(const TabularForm& form);

// Rebuilds `row` from the other b-1 rows using the unit column sums.
std::vector<std::uint8_t> restore_row(const TabularForm& form, unsigned row);

struct EconomicalForm {
  unsigned base = 0;
  Digits digits;
  std::map<unsigned, std::string> code_map;  // digit value -> elementary code
  std::string bits;
};

// Elementary codes "0", "10", "110", ..., "1..10", "1..11" for base b.
std::vector<std::string> elementary_codes(unsigned base);

EconomicalForm economical_encode(std::uint64_t value, unsigned base);

// Throws CorruptionError when bits do not parse under code_map.
std::uint64_t economical_decode(const EconomicalForm& form);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// (b^2 + b - 2) / (2b), reduced.
Rational mean_code_length(unsigned base);

struct CompactnessPoint {
  unsigned base = 0;
  unsigned c_b = 0;
  unsigned c_2 = 0;
  double l_bar = 0;
  double e_bar = 0;
};

// c_2 = ceil(c_b * log2 b), computed exactly as the bit width of b^c_b - 1.
unsigned binary_digits_for(unsigned base, unsigned c_b);

CompactnessPoint compactness(unsigned base, unsigned c_b);

// The relaxed estimate (b^2 + b - 2) / (2 b log2 b).
double relaxed_compactness(double base);

struct Minimum {
  double base = 0;
  double value = 0;
};

// Minimizes relaxed_compactness over b in (1, 4].
Minimum continuous_minimum();

// Text renderings for the CLI.
std::string render_tabular(const TabularForm& form);
std::string render_reduced(const TabularForm& form);
std::string render_economical(const EconomicalForm& form);

}  // namespace btn::numeral
