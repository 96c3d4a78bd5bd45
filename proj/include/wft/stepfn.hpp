#ifndef WFT_STEPFN_HPP_
#define WFT_STEPFN_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wft/interval.hpp"

namespace wft {

/// Piecewise constant, right-continuous function on a (possibly right-unbounded)
/// interval. Piece i covers [break(i-1), break(i)) with break(-1) = domain.lo.
///
/// Normalized on construction: breakpoints strictly inside the domain and
/// strictly increasing, adjacent values distinct.
template <class Value>
class BasicStepFunction {
 public:
  BasicStepFunction() : domain_{0.0, kInfinity}, values_{Value{}} {}
  BasicStepFunction(Interval domain, Value constant) : domain_(domain), values_{constant} {
    check_domain();
  }

  /// Accepts non-decreasing breakpoints; zero-width pieces and pieces outside
  /// the domain are dropped, equal neighbours merged.
  BasicStepFunction(Interval domain, std::vector<double> breaks, std::vector<Value> values);

  const Interval& domain() const { return domain_; }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<Value>& values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }

  /// Right-continuous evaluation; x must lie in the domain.
  Value operator()(double x) const;
  /// Value of the piece containing x in its interior, or immediately left of x.
  Value left_limit(double x) const;

  Value first() const { return values_.front(); }
  Value last() const { return values_.back(); }

  friend bool operator==(const BasicStepFunction&, const BasicStepFunction&) = default;

 private:
  void check_domain() const;
  Interval domain_;
  std::vector<double> breaks_;
  std::vector<Value> values_;
};

using StepFunction = BasicStepFunction<double>;

/// Step function with values on eps * Z, stored as integer indices.
class GridStepFunction {
 public:
  GridStepFunction() = default;
  GridStepFunction(BasicStepFunction<std::int64_t> indices, double eps);

  double eps() const { return eps_; }
  const BasicStepFunction<std::int64_t>& indices() const { return indices_; }
  const Interval& domain() const { return indices_.domain(); }
  std::int64_t index_at(double x) const { return indices_(x); }

  /// Real-valued view (values k * eps).
  StepFunction values() const;

  /// Integer-unit total variation of the jumps in (lo, hi].
  std::int64_t tv_units(double lo, double hi) const;
  /// max |k| over pieces meeting [lo, hi].
  std::int64_t sup_units(double lo, double hi) const;
  std::int64_t sup_units() const { return sup_units(domain().lo, domain().hi); }

  friend bool operator==(const GridStepFunction&, const GridStepFunction&) = default;

 private:
  BasicStepFunction<std::int64_t> indices_;
  double eps_ = 1.0;
};

/// Which one-sided limit to take.
enum class Side { kLeft, kRight };

/// Sum of |jumps| at breakpoints in (window.lo, window.hi]. The right end is
/// included because the right-continuous restriction to a closed window
/// carries the value after a jump located at window.hi.
double tv(const StepFunction& u, const Interval& window);
inline double tv(const StepFunction& u) { return tv(u, u.domain()); }

/// Exact integral of |u - v| by a merged-breakpoint sweep. On unbounded
/// domains the tail values must agree.
double l1_distance(const StepFunction& u, const StepFunction& v);
/// Same, restricted to a bounded window of the common domain.
double l1_distance(const StepFunction& u, const StepFunction& v, const Interval& window);

/// sup |u| over pieces meeting the window.
double sup_norm(const StepFunction& u, const Interval& window);
inline double sup_norm(const StepFunction& u) { return sup_norm(u, u.domain()); }

/// Closed convex hull of all values taken by the functions on their windows.
Interval range_hull(const std::vector<std::pair<StepFunction, Interval>>& restricted);

/// (T_t u)(tau) = u(t + tau). Domain becomes [0, hi - t].
StepFunction translate(const StepFunction& u, double shift);

/// One-sided limit at a point of the closed domain.
double trace(const StepFunction& u, double point, Side side);

struct QuantizeOptions {
  /// Bound on |values| of the result; defaults to eps * floor(||u||_inf / eps).
  std::optional<double> clamp;
  /// Initial hysteresis state (grid value) instead of the nearest grid value.
  std::optional<double> seed;
};

/// Hysteretic bracket-clamp quantization onto eps * Z.
///
/// w_0 is the grid value nearest to the first value (ties toward zero), or the
/// seed clamped into the first bracket; each later value keeps the previous
/// grid value when that value lies in the bracket [eps floor(v/eps),
/// eps ceil(v/eps)], otherwise it moves to the nearest bracket end. The result
/// is finally clamped into [-clamp, clamp]. Guarantees |w - u| < eps pointwise
/// and tv(w) <= tv(u) + eps.
GridStepFunction quantize(const StepFunction& u, double eps, const QuantizeOptions& options = {});

/// Boundary datum quantization compatible with an already quantized initial
/// datum: the hysteresis state is seeded with the initial trace, and if the
/// compatibility jump |u_b^eps(0+) - u_o^eps(0+)| <= |u_b(0+) - u_o(0+)| still
/// fails the first value is snapped toward the initial trace.
GridStepFunction quantize_boundary(const StepFunction& u_b, double eps, double u_o_trace,
                                   double u_o_eps_trace, std::optional<double> clamp = {});

// ---------------------------------------------------------------------------

template <class Value>
BasicStepFunction<Value>::BasicStepFunction(Interval domain, std::vector<double> breaks,
                                            std::vector<Value> values)
    : domain_(domain) {
  check_domain();
  if (values.size() != breaks.size() + 1) {
    throw InvalidArgument("step function needs one more value than breakpoints");
  }
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    if (!(breaks[i - 1] <= breaks[i])) {
      throw InvalidArgument("step function breakpoints must be non-decreasing");
    }
  }
  for (double b : breaks) {
    if (std::isnan(b)) throw InvalidArgument("step function breakpoint is NaN");
  }
  // Piece i lives on [breaks[i-1], breaks[i]); keep the ones with positive
  // width inside the domain.
  values_.clear();
  breaks_.clear();
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? -kInfinity : breaks[i - 1];
    const double hi = i + 1 == n ? kInfinity : breaks[i];
    const double a = std::max(lo, domain_.lo);
    const double b = std::min(hi, domain_.hi);
    const bool last_piece = i + 1 == n;
    // The final piece always survives on a degenerate remainder so that the
    // value at domain.hi is defined.
    if (!(a < b) && !(last_piece && values_.empty())) continue;
    if (!values_.empty() && values_.back() == values[i]) continue;
    if (!values_.empty()) breaks_.push_back(a);
    values_.push_back(values[i]);
  }
  if (values_.empty()) values_.push_back(values.back());
}

template <class Value>
void BasicStepFunction<Value>::check_domain() const {
  if (!(domain_.lo < domain_.hi) || !std::isfinite(domain_.lo)) {
    throw InvalidArgument("step function domain must be a nondegenerate interval");
  }
}

template <class Value>
Value BasicStepFunction<Value>::operator()(double x) const {
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

template <class Value>
Value BasicStepFunction<Value>::left_limit(double x) const {
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

}  // namespace wft

#endif  // WFT_STEPFN_HPP_
