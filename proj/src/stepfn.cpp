#include "wft/stepfn.hpp"

#include <algorithm>
#include <cmath>

namespace wft {

namespace {

// Snaps s to the nearest integer when it is within rounding noise of it, so
// that values such as 0.3 / 0.1 are treated as lying on the grid.
double snapped(double s) {
  const double r = std::round(s);
  return std::abs(s - r) <= 1e-9 * std::max(1.0, std::abs(s)) ? r : s;
}

std::int64_t floor_units(double v, double eps) {
  return static_cast<std::int64_t>(std::floor(snapped(v / eps)));
}

std::int64_t ceil_units(double v, double eps) {
  return static_cast<std::int64_t>(std::ceil(snapped(v / eps)));
}

// Nearest integer, ties toward zero.
std::int64_t nearest_units(double v, double eps) {
  const double s = snapped(v / eps);
  const double lo = std::floor(s);
  const double frac = s - lo;
  double k;
  if (frac < 0.5) {
    k = lo;
  } else if (frac > 0.5) {
    k = lo + 1.0;
  } else {
    k = s > 0 ? lo : lo + 1.0;
  }
  return static_cast<std::int64_t>(k);
}

// Indices of pieces meeting the closed window [lo, hi].
std::pair<std::size_t, std::size_t> pieces_meeting(const StepFunction& u, const Interval& w) {
  const auto& b = u.breaks();
  const auto first = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), w.lo) - b.begin());
  const auto last = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), w.hi) - b.begin());
  return {first, last};
}

void check_window(const StepFunction& u, const Interval& w) {
  if (w.empty()) throw InvalidArgument("empty window");
  if (w.lo < u.domain().lo || w.hi > u.domain().hi) {
    throw InvalidArgument("window outside the function domain");
  }
}

}  // namespace

GridStepFunction::GridStepFunction(BasicStepFunction<std::int64_t> indices, double eps)
    : indices_(std::move(indices)), eps_(eps) {
  if (!(eps_ > 0.0)) throw InvalidArgument("grid spacing must be positive");
}

StepFunction GridStepFunction::values() const {
  std::vector<double> v;
  v.reserve(indices_.values().size());
  for (auto k : indices_.values()) v.push_back(static_cast<double>(k) * eps_);
  return StepFunction(indices_.domain(), indices_.breaks(), std::move(v));
}

std::int64_t GridStepFunction::tv_units(double lo, double hi) const {
  const auto& b = indices_.breaks();
  const auto& v = indices_.values();
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] > lo && b[i] <= hi) sum += std::abs(v[i + 1] - v[i]);
  }
  return sum;
}

std::int64_t GridStepFunction::sup_units(double lo, double hi) const {
  const auto& b = indices_.breaks();
  const auto& v = indices_.values();
  std::int64_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = i == 0 ? -kInfinity : b[i - 1];
    const double c = i == b.size() ? kInfinity : b[i];
    if (a <= hi && c > lo) m = std::max(m, std::abs(v[i]));
  }
  return m;
}

double tv(const StepFunction& u, const Interval& window) {
  if (window.lo < u.domain().lo || window.hi > u.domain().hi || window.empty()) {
    throw InvalidArgument("tv: window outside the function domain");
  }
  const auto& b = u.breaks();
  const auto& v = u.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] > window.lo && b[i] <= window.hi) sum += std::abs(v[i + 1] - v[i]);
  }
  return sum;
}

double l1_distance(const StepFunction& u, const StepFunction& v, const Interval& window) {
  check_window(u, window);
  check_window(v, window);
  if (!window.bounded()) {
    if (u.last() != v.last()) throw InvalidArgument("l1_distance: tails differ, integral diverges");
  }
  const auto& bu = u.breaks();
  const auto& bv = v.breaks();
  std::size_t i = static_cast<std::size_t>(std::upper_bound(bu.begin(), bu.end(), window.lo) - bu.begin());
  std::size_t j = static_cast<std::size_t>(std::upper_bound(bv.begin(), bv.end(), window.lo) - bv.begin());
  double x = window.lo;
  double sum = 0.0;
  while (true) {
    const double next_u = i < bu.size() ? bu[i] : kInfinity;
    const double next_v = j < bv.size() ? bv[j] : kInfinity;
    const double next = std::min({next_u, next_v, window.hi});
    const double diff = std::abs(u.values()[i] - v.values()[j]);
    if (diff != 0.0) sum += diff * (next - x);
    if (next >= window.hi) break;
    x = next;
    if (next_u == next) ++i;
    if (next_v == next) ++j;
  }
  return sum;
}

double l1_distance(const StepFunction& u, const StepFunction& v) {
  if (!(u.domain() == v.domain())) throw InvalidArgument("l1_distance: domains differ");
  return l1_distance(u, v, u.domain());
}

double sup_norm(const StepFunction& u, const Interval& window) {
  check_window(u, window);
  const auto [first, last] = pieces_meeting(u, window);
  double m = 0.0;
  for (std::size_t i = first; i <= last && i < u.values().size(); ++i) {
    m = std::max(m, std::abs(u.values()[i]));
  }
  return m;
}

Interval range_hull(const std::vector<std::pair<StepFunction, Interval>>& restricted) {
  if (restricted.empty()) throw InvalidArgument("range_hull: empty list");
  Interval h{kInfinity, -kInfinity};
  for (const auto& [u, window] : restricted) {
    check_window(u, window);
    const auto [first, last] = pieces_meeting(u, window);
    for (std::size_t i = first; i <= last && i < u.values().size(); ++i) {
      h.lo = std::min(h.lo, u.values()[i]);
      h.hi = std::max(h.hi, u.values()[i]);
    }
  }
  return h;
}

StepFunction translate(const StepFunction& u, double shift) {
  if (!(shift >= 0.0)) throw InvalidArgument("translate: shift must be nonnegative");
  if (shift == 0.0) return u;
  const Interval& d = u.domain();
  if (!(d.lo + shift < d.hi)) throw InvalidArgument("translate: shift leaves the domain");
  std::vector<double> breaks;
  std::vector<double> values{u(d.lo + shift)};
  for (std::size_t i = 0; i < u.breaks().size(); ++i) {
    if (u.breaks()[i] > d.lo + shift) {
      breaks.push_back(u.breaks()[i] - shift);
      values.push_back(u.values()[i + 1]);
    }
  }
  return StepFunction({d.lo, d.hi - shift}, std::move(breaks), std::move(values));
}

double trace(const StepFunction& u, double point, Side side) {
  const Interval& d = u.domain();
  if (!d.contains(point)) throw InvalidArgument("trace: point outside the closed domain");
  if (side == Side::kRight) {
    if (point == d.hi) throw InvalidArgument("trace: no right limit at the right end");
    return u(point);
  }
  if (point == d.lo) throw InvalidArgument("trace: no left limit at the left end");
  return u.left_limit(point);
}

GridStepFunction quantize(const StepFunction& u, double eps, const QuantizeOptions& options) {
  if (!(eps > 0.0)) throw InvalidArgument("quantize: eps must be positive");
  const auto& v = u.values();
  double sup = 0.0;
  for (double x : v) sup = std::max(sup, std::abs(x));
  const std::int64_t clamp_units =
      options.clamp ? floor_units(*options.clamp, eps) : floor_units(sup, eps);

  std::vector<std::int64_t> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t lo = floor_units(v[i], eps);
    const std::int64_t hi = ceil_units(v[i], eps);
    std::int64_t prev;
    if (i == 0) {
      prev = options.seed ? nearest_units(*options.seed, eps) : nearest_units(v[0], eps);
    } else {
      prev = w[i - 1];
    }
    w[i] = std::clamp(prev, lo, hi);
  }
  for (auto& k : w) k = std::clamp(k, -clamp_units, clamp_units);
  return GridStepFunction(BasicStepFunction<std::int64_t>(u.domain(), u.breaks(), std::move(w)), eps);
}

GridStepFunction quantize_boundary(const StepFunction& u_b, double eps, double u_o_trace,
                                   double u_o_eps_trace, std::optional<double> clamp) {
  QuantizeOptions options{clamp, u_o_eps_trace};
  GridStepFunction q = quantize(u_b, eps, options);
  const double allowed = std::abs(u_b.first() - u_o_trace);
  const double actual = std::abs(static_cast<double>(q.indices().first()) * eps - u_o_eps_trace);
  if (actual > allowed + 1e-12) {
    const double b0 = u_b.first();
    const double snap = u_o_eps_trace <= b0 ? static_cast<double>(floor_units(b0, eps)) * eps
                                            : static_cast<double>(ceil_units(b0, eps)) * eps;
    options.seed = snap;
    q = quantize(u_b, eps, options);
  }
  return q;
}

}  // namespace wft
