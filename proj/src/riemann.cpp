#include "wft/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace wft {

namespace {

// True when the chord a->b is at least as steep as b->c along a monotone
// path a, b, c. Compared by cross-multiplication of node differences; the
// factor (b - a)(c - b) is positive for monotone paths in either direction.
bool not_convex_turn(const PLCFlux& flux, std::int64_t a, std::int64_t b, std::int64_t c) {
  const double lhs = (flux.node(b) - flux.node(a)) * static_cast<double>(c - b);
  const double rhs = (flux.node(c) - flux.node(b)) * static_cast<double>(b - a);
  const double scale = std::abs(lhs) + std::abs(rhs);
  return lhs >= rhs - 1e-13 * scale;
}

}  // namespace

WaveFan solve_riemann(const PLCFlux& flux, std::int64_t left, std::int64_t right) {
  if (!flux.contains(left) || !flux.contains(right)) {
    throw InvalidArgument("solve_riemann: state outside the flux node range");
  }
  WaveFan fan;
  if (left == right) return fan;
  const std::int64_t step = left < right ? 1 : -1;
  std::vector<std::int64_t> chain{left};
  for (std::int64_t k = left + step;; k += step) {
    while (chain.size() >= 2 && not_convex_turn(flux, chain[chain.size() - 2], chain.back(), k)) {
      chain.pop_back();
    }
    chain.push_back(k);
    if (k == right) break;
  }
  fan.reserve(chain.size() - 1);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    fan.push_back({chain[i], chain[i + 1], flux.speed(chain[i], chain[i + 1])});
  }
  return fan;
}

WaveFan solve_boundary_left(const PLCFlux& flux, std::int64_t datum, std::int64_t trace) {
  WaveFan fan = solve_riemann(flux, datum, trace);
  const auto first_kept = std::find_if(fan.begin(), fan.end(), [](const Wave& w) { return w.speed > 0.0; });
  fan.erase(fan.begin(), first_kept);
  return fan;
}

WaveFan solve_boundary_right(const PLCFlux& flux, std::int64_t trace, std::int64_t datum) {
  WaveFan fan = solve_riemann(flux, trace, datum);
  const auto first_dropped = std::find_if(fan.begin(), fan.end(), [](const Wave& w) { return !(w.speed < 0.0); });
  fan.erase(first_dropped, fan.end());
  return fan;
}

double oleinik_violation(const PLCFlux& flux, std::int64_t left, std::int64_t right, double speed) {
  double worst = -kInfinity;
  const std::int64_t lo = std::min(left, right);
  const std::int64_t hi = std::max(left, right);
  const double eps = flux.eps();
  for (std::int64_t k = lo + 1; k < hi; ++k) {
    // (f(u_r) - f(k)) / (u_r - k) <= speed <= (f(k) - f(u_l)) / (k - u_l)
    const double from_right = (flux.node(right) - flux.node(k)) / (static_cast<double>(right - k) * eps);
    const double from_left = (flux.node(k) - flux.node(left)) / (static_cast<double>(k - left) * eps);
    worst = std::max({worst, from_right - speed, speed - from_left});
  }
  return worst;
}

}  // namespace wft
