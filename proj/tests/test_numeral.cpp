#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "btn/error.hpp"
#include "btn/numeral.hpp"
#include "reference_tables.hpp"

using namespace btn::numeral;

TEST_CASE("positional digits") {
  CHECK(to_positional(1358, 3) == Digits{1, 2, 1, 2, 0, 2, 2});
  CHECK(to_positional(1358, 5) == Digits{2, 0, 4, 1, 3});
  CHECK(to_positional(1358, 4) == Digits{1, 1, 1, 0, 3, 2});
  CHECK(to_positional(1, 7) == Digits{1});
  // Exact powers keep their full digit count.
  CHECK(to_positional(1000, 10).size() == 4);
  CHECK_THROWS_AS(to_positional(10, 1), std::invalid_argument);
  CHECK_THROWS_AS(to_positional(0, 3), std::invalid_argument);
  CHECK(from_positional(to_positional(1358, 3), 3) == 1358);
}

TEST_CASE("tabular form") {
  const auto binary = tabular_form(1358, 2);
  REQUIRE(binary.cells.size() == 2);
  CHECK(binary.cells[1] == std::vector<std::uint8_t>{1, 0, 1, 0, 1, 0, 0, 1, 1, 1, 0});
  CHECK(binary.cells[0] == std::vector<std::uint8_t>{0, 1, 0, 1, 0, 1, 1, 0, 0, 0, 1});

  const auto ternary = tabular_form(1358, 3);
  CHECK(ternary.cells.size() == 3);
  CHECK(ternary.columns() == 7);
  CHECK(ternary.cells[2] == std::vector<std::uint8_t>{0, 1, 0, 1, 0, 1, 1});

  for (unsigned b = 2; b <= 20; ++b) {
    const auto f = tabular_form(b, b);
    REQUIRE(f.digits == Digits{1, 0});
    REQUIRE(f.cells[1][0] == 1);
    REQUIRE(f.cells[0][1] == 1);
  }
}

TEST_CASE("tabular columns sum to one and any row is recoverable") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> values(1, 1'000'000'000'000ull);
  std::uniform_int_distribution<unsigned> bases(2, 16);
  for (int k = 0; k < 1000; ++k) {
    const auto f = tabular_form(values(rng), bases(rng));
    REQUIRE(f.cells.size() == f.base);
    for (std::size_t j = 0; j < f.columns(); ++j) {
      unsigned sum = 0;
      for (unsigned row = 0; row < f.base; ++row) {
        sum += f.cells[row][j];
        REQUIRE(f.cells[row][j] == (row == f.digits[j] ? 1 : 0));
      }
      REQUIRE(sum == 1);
    }
    for (unsigned row = 0; row < f.base; ++row) {
      REQUIRE(restore_row(f, row) == f.cells[row]);
    }
  }
}

TEST_CASE("dominant row") {
  CHECK(dominant_row(tabular_form(1358, 3)) == 2);
  CHECK(dominant_row(tabular_form(1358, 4)) == 1);
  // Oracle: direct digit histogram, smallest digit wins ties.
  const auto f5 = tabular_form(1358, 5);
  std::vector<unsigned> hist(5, 0);
  for (unsigned d : f5.digits) {
    hist[d]++;
  }
  const auto expected =
      static_cast<unsigned>(std::max_element(hist.begin(), hist.end()) - hist.begin());
  CHECK(expected == 0);
  CHECK(dominant_row(f5) == expected);
}

TEST_CASE("economical form totals") {
  CHECK(economical_encode(1358, 3).bits.size() == 10);
  CHECK(economical_encode(1358, 4).bits.size() == 11);
  CHECK(economical_encode(1358, 5).bits.size() == 14);
  const auto f3 = economical_encode(1358, 3);
  CHECK(f3.code_map.at(2) == "0");
  CHECK(f3.code_map.at(1) == "10");
  CHECK(f3.code_map.at(0) == "11");
  CHECK(economical_decode(f3) == 1358);
  CHECK_THROWS_AS(economical_encode(10, 2), std::invalid_argument);
  for (unsigned b = 3; b <= 8; ++b) {
    CHECK(economical_decode(economical_encode(1, b)) == 1);
  }
}

TEST_CASE("economical code map structure and round trip") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> values(1, 999'999'999);
  std::uniform_int_distribution<unsigned> bases(3, 16);
  for (int k = 0; k < 1000; ++k) {
    const auto v = values(rng);
    const auto b = bases(rng);
    const auto form = economical_encode(v, b);
    REQUIRE(economical_decode(form) == v);

    std::vector<std::size_t> lengths;
    std::vector<std::string> codes;
    for (const auto& [d, code] : form.code_map) {
      lengths.push_back(code.size());
      codes.push_back(code);
    }
    std::sort(lengths.begin(), lengths.end());
    std::vector<std::size_t> expected;
    for (std::size_t l = 1; l < b; ++l) {
      expected.push_back(l);
    }
    expected.push_back(b - 1);
    REQUIRE(lengths == expected);
    std::sort(codes.begin(), codes.end());
    for (std::size_t i = 1; i < codes.size(); ++i) {
      REQUIRE_FALSE(codes[i].starts_with(codes[i - 1]));
    }

    // Total length depends only on the sorted frequency profile.
    std::vector<unsigned> hist(b, 0);
    for (unsigned d : form.digits) {
      hist[d]++;
    }
    std::sort(hist.rbegin(), hist.rend());
    std::size_t total = 0;
    for (unsigned r = 0; r < b; ++r) {
      total += hist[r] * expected[r];
    }
    REQUIRE(form.bits.size() == total);
  }
}

TEST_CASE("economical decode rejects garbage") {
  auto form = economical_encode(1358, 4);
  form.bits += "1";
  CHECK_THROWS_AS(economical_decode(form), btn::CorruptionError);
  form.bits = "";
  CHECK_THROWS_AS(economical_decode(form), btn::CorruptionError);
}

TEST_CASE("mean code length") {
  CHECK(mean_code_length(3) == Rational{5, 3});
  CHECK(mean_code_length(4) == Rational{9, 4});
  CHECK(mean_code_length(8) == Rational{35, 8});
  for (unsigned b = 3; b <= 20; ++b) {
    const auto codes = elementary_codes(b);
    std::uint64_t sum = 0;
    for (const auto& c : codes) {
      sum += c.size();
    }
    const auto r = mean_code_length(b);
    REQUIRE(sum * r.den == r.num * b);
  }
}

TEST_CASE("compactness table") {
  CHECK(compactness(3, 2).e_bar == doctest::Approx(0.833).epsilon(0.0005));
  CHECK(compactness(3, 3).e_bar == doctest::Approx(1.0));
  CHECK(compactness(4, 7).e_bar == doctest::Approx(1.125));
  CHECK(compactness(3, 4).e_bar == doctest::Approx(0.952).epsilon(0.0005));

  for (unsigned c = 2; c <= 12; ++c) {
    CHECK(compactness(3, c).c_2 == btn::reference::kBase3BinaryDigits[c - 2]);
  }
  for (unsigned b = 3; b <= 8; ++b) {
    for (unsigned c = 2; c <= 12; ++c) {
      const auto p = compactness(b, c);
      REQUIRE(std::abs(p.e_bar - btn::reference::kCompactness[b - 3][c - 2]) <= 0.0005);
      // Floating-point ceiling agrees away from exact powers of two.
      REQUIRE(p.c_2 == static_cast<unsigned>(std::ceil(c * std::log2(static_cast<double>(b)) - 1e-12)));
    }
  }
}

TEST_CASE("base three is the most compact discrete base") {
  double best = 1e9;
  unsigned best_base = 0;
  for (unsigned b = 3; b <= 8; ++b) {
    double sum = 0;
    for (unsigned c = 2; c <= 12; ++c) {
      sum += compactness(b, c).e_bar;
    }
    if (sum < best) {
      best = sum;
      best_base = b;
    }
  }
  CHECK(best_base == 3);
}

TEST_CASE("continuous minimum") {
  CHECK(relaxed_compactness(2.0) == doctest::Approx(1.0));
  CHECK(relaxed_compactness(3.0) == doctest::Approx(10.0 / (6.0 * std::log2(3.0))));
  CHECK(relaxed_compactness(3.0) == doctest::Approx(1.0515).epsilon(1e-4));

  const auto m = continuous_minimum();
  CHECK(std::abs(m.base - 1.7) <= 0.05);
  CHECK(std::abs(m.value - 0.995) <= 0.002);

  // Grid-scan oracle.
  double grid_b = 0;
  double grid_f = 1e9;
  for (double b = 1.001; b <= 4.0; b += 0.0005) {
    if (const double f = relaxed_compactness(b); f < grid_f) {
      grid_f = f;
      grid_b = b;
    }
  }
  CHECK(std::abs(m.base - grid_b) < 0.01);
  CHECK(m.value <= grid_f + 1e-9);
}

TEST_CASE("renderings mention every digit") {
  const auto f = tabular_form(1358, 3);
  const auto text = render_tabular(f);
  CHECK(text.find("(digit 2)") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  const auto reduced = render_reduced(f);
  CHECK(std::count(reduced.begin(), reduced.end(), '\n') == 2);
  CHECK(render_economical(economical_encode(1358, 3)).find("(10 bits)") != std::string::npos);
}
