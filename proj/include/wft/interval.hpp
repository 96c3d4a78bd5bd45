#ifndef WFT_INTERVAL_HPP_
#define WFT_INTERVAL_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wft {

/// Thrown for malformed input: bad spacing, empty intervals, data off the grid.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a solver invariant breaks. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi]; hi may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(lo <= hi); }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Smallest interval containing both.
inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

/// I(a, b) = [min(a,b), max(a,b)].
inline Interval between(double a, double b) {
  return {std::min(a, b), std::max(a, b)};
}

/// Spatial domain of the problem: the half-line [0, +inf) or a segment [0, L].
class Domain {
 public:
  Domain() : length_(kInfinity) {}  // the half-line
  static Domain half_line() { return Domain(kInfinity); }
  static Domain segment(double length) {
    if (!(length > 0.0) || !std::isfinite(length)) {
      throw InvalidArgument("segment length must be positive and finite");
    }
    return Domain(length);
  }

  bool is_segment() const { return std::isfinite(length_); }
  double length() const { return length_; }
  Interval interval() const { return {0.0, length_}; }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  explicit Domain(double length) : length_(length) {}
  double length_;
};

}  // namespace wft

#endif  // WFT_INTERVAL_HPP_
