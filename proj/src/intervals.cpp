#include "recourse/intervals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "recourse/errors.hpp"

namespace recourse {

bool Interval::contains(double x) const {
  const bool above = lo_open ? x > lo : x >= lo;
  const bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

std::string Interval::label() const {
  if (is_point()) return "[" + format_number(lo) + "]";
  std::string out = lo_open ? "(" : "[";
  out += format_number(lo) + ", " + format_number(hi);
  out += hi_open ? ")" : "]";
  return out;
}

std::string Interval::describe() const {
  if (is_point()) return format_number(lo);
  return std::string(lo_open ? "> " : ">= ") + format_number(lo) +
         (hi_open ? " and < " : " and <= ") + format_number(hi);
}

namespace {

double pick_representative(const Interval& cell, double step) {
  if (!cell.lo_open) return cell.lo;
  if (!cell.hi_open) {
    const double next = cell.lo + step;
    if (cell.contains(next)) return next;
  }
  return cell.lo + (cell.hi - cell.lo) / 2.0;
}

}  // namespace

std::vector<Interval> induce_intervals(std::string_view feature,
                                       std::span<const Cut> cuts, double lo,
                                       double hi, double step) {
  if (!(lo <= hi)) {
    throw EmptyRange("numeric feature " + std::string(feature) +
                     " has an empty range [" + format_number(lo) + ", " +
                     format_number(hi) + "]");
  }
  std::vector<Cut> sorted;
  for (const Cut& c : cuts) {
    const bool splits = c.side == CutSide::after ? (lo <= c.at && c.at < hi)
                                                 : (lo < c.at && c.at <= hi);
    if (splits) sorted.push_back(c);
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<Interval> cells;
  double cursor = lo;
  bool cursor_open = false;
  for (const Cut& c : sorted) {
    Interval cell{cursor, c.at, cursor_open, c.side == CutSide::before, 0.0};
    cells.push_back(cell);
    cursor = c.at;
    cursor_open = c.side == CutSide::after;
  }
  cells.push_back(Interval{cursor, hi, cursor_open, false, 0.0});
  for (Interval& cell : cells) cell.representative = pick_representative(cell, step);
  return cells;
}

std::vector<Interval> induce_intervals(std::string_view feature,
                                       std::span<const double> thresholds,
                                       double lo, double hi) {
  std::vector<Cut> cuts;
  std::vector<double> values{lo, hi};
  for (double t : thresholds) {
    cuts.push_back(Cut{t, CutSide::after});
    values.push_back(t);
  }
  return induce_intervals(feature, cuts, lo, hi, decimal_step(values));
}

double decimal_step(std::span<const double> values) {
  double step = 1.0;
  for (int digits = 0; digits <= 9; ++digits) {
    const bool exact = std::all_of(values.begin(), values.end(), [&](double v) {
      const double scaled = v / step;
      return std::fabs(scaled - std::round(scaled)) < 1e-6;
    });
    if (exact) return step;
    step /= 10.0;
  }
  return step;
}

std::string format_number(double value) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace recourse
