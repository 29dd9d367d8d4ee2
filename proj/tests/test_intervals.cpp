#include <doctest.h>

#include <array>
#include <random>

#include "recourse/errors.hpp"
#include "recourse/intervals.hpp"
#include "recourse/rule_model.hpp"

using namespace recourse;

TEST_CASE("thresholds partition the declared range") {
  const std::vector<double> thresholds{7, 72};
  const auto cells = induce_intervals("duration_months", thresholds, 1, 120);
  REQUIRE(cells.size() == 3);
  CHECK(cells[0].label() == "[1, 7]");
  CHECK(cells[1].label() == "(7, 72]");
  CHECK(cells[2].label() == "(72, 120]");
  CHECK(cells[1].describe() == "> 7 and <= 72");
}

TEST_CASE("no thresholds leaves one interval") {
  const auto cells = induce_intervals("x", std::span<const double>{}, 0, 10);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].label() == "[0, 10]");
  CHECK(cells[0].representative == 0);
}

TEST_CASE("inverted range is rejected") {
  CHECK_THROWS_AS(induce_intervals("x", std::span<const double>{}, 5, 1), EmptyRange);
}

TEST_CASE("cut sides decide where the threshold falls") {
  const std::vector<Cut> before{{4, CutSide::before}};
  auto cells = induce_intervals("x", before, 1, 10, 1);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].label() == "[1, 4)");
  CHECK(cells[1].label() == "[4, 10]");

  const std::vector<Cut> both{{5, CutSide::before}, {5, CutSide::after}};
  cells = induce_intervals("x", both, 1, 10, 1);
  REQUIRE(cells.size() == 3);
  CHECK(cells[1].is_point());
  CHECK(cells[1].label() == "[5]");
  CHECK(cells[1].describe() == "5");
  CHECK(cells[2].label() == "(5, 10]");
}

TEST_CASE("cuts on or outside the edges are ignored") {
  const std::vector<Cut> cuts{{0, CutSide::before}, {10, CutSide::after}, {42, CutSide::after}};
  CHECK(induce_intervals("x", cuts, 0, 10, 1).size() == 1);
}

TEST_CASE("representatives lie inside their interval") {
  const std::vector<Cut> cuts{{2.5, CutSide::after}, {3, CutSide::before}, {3, CutSide::after},
                              {7, CutSide::before}};
  const auto cells = induce_intervals("x", cuts, 0, 10, 0.1);
  for (const Interval& c : cells) CHECK(c.contains(c.representative));
  // (2.5, 3) is open on both ends: the midpoint is used.
  CHECK(cells[1].representative == doctest::Approx(2.75));
  // Left-open, right-closed cells use lo + step.
  const std::vector<double> t{6849};
  const auto gain = induce_intervals("capital_gain", t, 0, 99999);
  CHECK(gain[1].representative == 6850);
}

TEST_CASE("cells tile the range exactly") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Cut> cuts;
    const int n = std::uniform_int_distribution<int>(0, 5)(rng);
    for (int i = 0; i < n; ++i) {
      cuts.push_back({static_cast<double>(std::uniform_int_distribution<int>(0, 20)(rng)),
                      rng() % 2 ? CutSide::before : CutSide::after});
    }
    const auto cells = induce_intervals("x", cuts, 0, 20, 1);
    for (int k = 0; k <= 400; ++k) {
      const double x = k / 20.0;
      int hits = 0;
      for (const Interval& c : cells) hits += c.contains(x) ? 1 : 0;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("a literal is constant on every cell it induced") {
  std::mt19937 rng(2024);
  const std::array<Comparator, 6> ops{Comparator::eq, Comparator::ne, Comparator::le,
                                      Comparator::lt, Comparator::ge, Comparator::gt};
  auto compare = [](double x, Comparator op, double t) {
    switch (op) {
      case Comparator::eq: return x == t;
      case Comparator::ne: return x != t;
      case Comparator::le: return x <= t;
      case Comparator::lt: return x < t;
      case Comparator::ge: return x >= t;
      case Comparator::gt: return x > t;
    }
    return false;
  };
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Literal> literals;
    std::vector<Cut> cuts;
    for (int i = 0; i < 3; ++i) {
      const double t = std::uniform_int_distribution<int>(1, 99)(rng) / 2.0;
      literals.emplace_back(0, ops[rng() % ops.size()], format_number(t));
      for (const Cut& c : literals.back().cuts()) cuts.push_back(c);
    }
    const auto cells = induce_intervals("x", cuts, 0, 50, 0.5);
    const auto domain = FeatureDomain::numeric("x", 0, 50, cells);
    for (Literal& l : literals) {
      l.bind(domain);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const Interval& c = cells[i];
        std::uniform_real_distribution<double> inside(c.lo, c.hi);
        for (int k = 0; k < 10; ++k) {
          double x = k == 0 ? c.representative : inside(rng);
          if (!c.contains(x)) x = c.representative;
          CHECK(compare(x, l.op(), l.threshold()) == l.holds(i));
        }
      }
    }
  }
}

TEST_CASE("number text helpers") {
  const std::vector<double> ints{1, 250, 18424};
  CHECK(decimal_step(ints) == 1);
  const std::vector<double> tenths{0.5, 2};
  CHECK(decimal_step(tenths) == doctest::Approx(0.1));
  CHECK(format_number(6849) == "6849");
  CHECK(format_number(2.75) == "2.75");
  CHECK(parse_number("+3") == 3);
  CHECK(parse_number("-1.5") == -1.5);
  CHECK_FALSE(parse_number("abc"));
  CHECK_FALSE(parse_number("7x"));
  CHECK_FALSE(parse_number("inf"));
  CHECK_FALSE(parse_number(""));
}
