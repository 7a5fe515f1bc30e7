#include "btn/numeral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/math/tools/minima.hpp>

#include "btn/error.hpp"

namespace btn::numeral {
namespace {

void check_base(unsigned base, unsigned min) {
  if (base < min) {
    throw std::invalid_argument("base must be at least " + std::to_string(min) + ", got " +
                                std::to_string(base));
  }
}

}  // namespace

Digits to_positional(std::uint64_t value, unsigned base) {
  check_base(base, 2);
  if (value == 0) {
    throw std::invalid_argument("value must be a natural number");
  }
  Digits out;
  while (value > 0) {
    out.push_back(static_cast<unsigned>(value % base));
    value /= base;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint64_t from_positional(const Digits& digits, unsigned base) {
  check_base(base, 2);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value = 0;
  for (unsigned d : digits) {
    if (d >= base) {
      throw std::invalid_argument("digit " + std::to_string(d) + " out of range for base " +
                                  std::to_string(base));
    }
    if (value > (kMax - d) / base) {
      throw std::overflow_error("positional value exceeds 64 bits");
    }
    value = value * base + d;
  }
  return value;
}

unsigned TabularForm::row_sum(unsigned row) const {
  unsigned s = 0;
  for (auto cell : cells.at(row)) {
    s += cell;
  }
  return s;
}

TabularForm tabular_form(std::uint64_t value, unsigned base) {
  TabularForm form;
  form.base = base;
  form.digits = to_positional(value, base);
  form.cells.assign(base, std::vector<std::uint8_t>(form.digits.size(), 0));
  for (std::size_t j = 0; j < form.digits.size(); ++j) {
    form.cells[form.digits[j]][j] = 1;
  }
  return form;
}

unsigned dominant_row(const TabularForm& form) {
  unsigned best = 0;
  unsigned best_sum = form.row_sum(0);
  for (unsigned row = 1; row < form.base; ++row) {
    const unsigned s = form.row_sum(row);
    if (s > best_sum) {
      best = row;
      best_sum = s;
    }
  }
  return best;
}

std::vector<std::uint8_t> restore_row(const TabularForm& form, unsigned row) {
  if (row >= form.base) {
    throw std::invalid_argument("row out of range");
  }
  std::vector<std::uint8_t> out(form.columns(), 1);
  for (unsigned other = 0; other < form.base; ++other) {
    if (other == row) {
      continue;
    }
    for (std::size_t j = 0; j < form.columns(); ++j) {
      out[j] = static_cast<std::uint8_t>(out[j] - form.cells[other][j]);
    }
  }
  return out;
}

std::vector<std::string> elementary_codes(unsigned base) {
  check_base(base, 2);
  std::vector<std::string> codes;
  for (unsigned r = 0; r + 1 < base; ++r) {
    codes.push_back(std::string(r, '1') + '0');
  }
  codes.push_back(std::string(base - 1, '1'));
  return codes;
}

EconomicalForm economical_encode(std::uint64_t value, unsigned base) {
  check_base(base, 3);
  EconomicalForm form;
  form.base = base;
  form.digits = to_positional(value, base);

  struct Stat {
    unsigned digit;
    unsigned count = 0;
    std::size_t first = std::numeric_limits<std::size_t>::max();
  };
  std::vector<Stat> stats(base);
  for (unsigned d = 0; d < base; ++d) {
    stats[d].digit = d;
  }
  for (std::size_t j = 0; j < form.digits.size(); ++j) {
    auto& s = stats[form.digits[j]];
    ++s.count;
    s.first = std::min(s.first, j);
  }
  // Absent digits keep first = max and so sort after present ones, by value.
  std::stable_sort(stats.begin(), stats.end(), [](const Stat& a, const Stat& b) {
    if (a.count != b.count) {
      return a.count > b.count;
    }
    return a.first < b.first;
  });

  const auto codes = elementary_codes(base);
  for (unsigned r = 0; r < base; ++r) {
    form.code_map[stats[r].digit] = codes[r];
  }
  for (unsigned d : form.digits) {
    form.bits += form.code_map[d];
  }
  return form;
}

std::uint64_t economical_decode(const EconomicalForm& form) {
  std::unordered_map<std::string, unsigned> inverse;
  std::size_t longest = 0;
  for (const auto& [digit, code] : form.code_map) {
    if (!inverse.emplace(code, digit).second) {
      throw CorruptionError("duplicate code in economical code map");
    }
    longest = std::max(longest, code.size());
  }
  Digits digits;
  std::string pending;
  for (char c : form.bits) {
    pending.push_back(c);
    if (auto it = inverse.find(pending); it != inverse.end()) {
      digits.push_back(it->second);
      pending.clear();
    } else if (pending.size() >= longest) {
      throw CorruptionError("unrecognized code '" + pending + "' in economical form");
    }
  }
  if (!pending.empty()) {
    throw CorruptionError("economical form ends inside a code");
  }
  if (digits.empty()) {
    throw CorruptionError("economical form holds no digits");
  }
  try {
    return from_positional(digits, form.base);
  } catch (const std::exception& e) {
    throw CorruptionError(std::string("economical form does not decode: ") + e.what());
  }
}

Rational mean_code_length(unsigned base) {
  check_base(base, 3);
  const std::uint64_t b = base;
  const std::uint64_t num = b * b + b - 2;
  const std::uint64_t den = 2 * b;
  const std::uint64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

unsigned binary_digits_for(unsigned base, unsigned c_b) {
  check_base(base, 2);
  boost::multiprecision::cpp_int power = 1;
  for (unsigned i = 0; i < c_b; ++i) {
    power *= base;
  }
  power -= 1;
  return power == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(power)) + 1;
}

CompactnessPoint compactness(unsigned base, unsigned c_b) {
  check_base(base, 3);
  if (c_b == 0) {
    throw std::invalid_argument("digit count must be positive");
  }
  CompactnessPoint p;
  p.base = base;
  p.c_b = c_b;
  p.c_2 = binary_digits_for(base, c_b);
  p.l_bar = mean_code_length(base).value();
  p.e_bar = static_cast<double>(c_b) * p.l_bar / static_cast<double>(p.c_2);
  return p;
}

double relaxed_compactness(double base) {
  return (base * base + base - 2.0) / (2.0 * base * std::log2(base));
}

Minimum continuous_minimum() {
  // Left end open: the estimate is 0/0 at b = 1.
  const auto [b, f] = boost::math::tools::brent_find_minima(
      [](double b) { return relaxed_compactness(b); }, 1.0 + 1e-9, 4.0,
      std::numeric_limits<double>::digits / 2);
  return Minimum{b, f};
}

std::string render_tabular(const TabularForm& form) {
  std::ostringstream out;
  const unsigned dominant = dominant_row(form);
  for (unsigned row = 0; row < form.base; ++row) {
    out << (row == dominant ? '*' : ' ') << ' ';
    for (std::size_t j = 0; j < form.columns(); ++j) {
      out << (j ? " " : "") << static_cast<int>(form.cells[row][j]);
    }
    out << "   (digit " << row << ")\n";
  }
  return out.str();
}

std::string render_reduced(const TabularForm& form) {
  // Drops the highest non-dominant row; restore_row can rebuild it.
  const unsigned dominant = dominant_row(form);
  unsigned dropped = form.base - 1;
  if (dropped == dominant) {
    --dropped;
  }
  std::ostringstream out;
  for (unsigned row = 0; row < form.base; ++row) {
    if (row == dropped) {
      continue;
    }
    out << (row == dominant ? '*' : ' ') << ' ';
    for (std::size_t j = 0; j < form.columns(); ++j) {
      out << (j ? " " : "") << static_cast<int>(form.cells[row][j]);
    }
    out << "   (digit " << row << ")\n";
  }
  return out.str();
}

std::string render_economical(const EconomicalForm& form) {
  std::ostringstream out;
  out << "digits:";
  for (unsigned d : form.digits) {
    out << ' ' << d;
  }
  out << "\ncodes:";
  for (const auto& [digit, code] : form.code_map) {
    out << ' ' << digit << "='" << code << '\'';
  }
  out << "\nbits: " << form.bits << " (" << form.bits.size() << " bits)\n";
  return out.str();
}

}  // namespace btn::numeral
