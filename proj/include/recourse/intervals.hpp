#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace recourse {

/// One cell of a numeric feature's partition. Every rule literal over the
/// feature has a single truth value on each cell.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
  double representative = 0.0;

  bool contains(double x) const;
  bool is_point() const { return lo == hi; }

  /// Mathematical notation, e.g. "(7, 72]".
  std::string label() const;
  /// Prose form used in path tables, e.g. "> 7 and <= 72".
  std::string describe() const;

  bool operator==(const Interval&) const = default;
};

/// Which side of a cut the threshold value itself falls on. Literals
/// `x =< t` and `x > t` cut after t; `x < t` and `x >= t` cut before it.
enum class CutSide { before, after };

struct Cut {
  double at = 0.0;
  CutSide side = CutSide::after;

  auto operator<=>(const Cut&) const = default;
};

/// Partition [lo, hi] at the given cuts. Cuts outside the range (or on an
/// edge where they would leave an empty cell) are ignored. Throws EmptyRange
/// when lo > hi.
std::vector<Interval> induce_intervals(std::string_view feature,
                                       std::span<const Cut> cuts, double lo,
                                       double hi, double step);

/// Classic form: thresholds t_1 < ... < t_k give [lo,t_1], (t_1,t_2], ...,
/// (t_k,hi].
std::vector<Interval> induce_intervals(std::string_view feature,
                                       std::span<const double> thresholds,
                                       double lo, double hi);

/// Smallest power-of-ten step that represents every value exactly (1 for
/// integers, 0.1 when one decimal place is used, ...).
double decimal_step(std::span<const double> values);

/// Shortest round-trip decimal text, independent of the C locale.
std::string format_number(double value);

/// Locale-independent decimal parse of the whole string.
std::optional<double> parse_number(std::string_view text);

}  // namespace recourse
