#ifndef WFT_TESTS_SUPPORT_HPP_
#define WFT_TESTS_SUPPORT_HPP_

#include <random>

#include "wft/nonaut.hpp"
#include "wft/tracker.hpp"

namespace wft::testing {

inline SpaceTimeFlux burgers() { return SpaceTimeFlux::in_u({0.0, 0.0, 0.5}); }

inline StepFunction step(Interval domain, double first, std::vector<std::pair<double, double>> breaks) {
  std::vector<double> b;
  std::vector<double> v{first};
  for (auto [x, y] : breaks) {
    b.push_back(x);
    v.push_back(y);
  }
  return StepFunction(domain, std::move(b), std::move(v));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Random polynomial with deg_u <= max_deg_u and deg_t <= deg_t.
inline SpaceTimeFlux random_flux(std::mt19937_64& rng, int max_deg_u, int deg_t = 0, double scale = 1.0) {
  const int du = static_cast<int>(uniform_int(rng, 1, max_deg_u));
  Eigen::MatrixXd c(deg_t + 1, du + 1);
  for (int j = 0; j <= deg_t; ++j) {
    for (int k = 0; k <= du; ++k) c(j, k) = scale * uniform(rng, -1.0, 1.0);
  }
  return SpaceTimeFlux(c);
}

/// Grid-valued step function with up to max_breaks breakpoints in (lo, span).
inline StepFunction random_grid_step(std::mt19937_64& rng, Interval domain, double span, std::size_t max_breaks,
                                     double eps, std::int64_t kmax) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(max_breaks)));
  std::vector<double> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(uniform(rng, domain.lo, std::min(domain.hi, span)));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::erase_if(b, [&](double x) { return x <= domain.lo || x >= domain.hi; });
  std::vector<double> v;
  for (std::size_t i = 0; i <= b.size(); ++i) v.push_back(static_cast<double>(uniform_int(rng, -kmax, kmax)) * eps);
  return StepFunction(domain, std::move(b), std::move(v));
}

struct Problem {
  SpaceTimeFlux flux;
  IbvpData raw;
  GridData data;
  double eps;
  double horizon;
};

struct ProblemShape {
  bool segment = false;
  int max_deg_u = 4;
  int deg_t = 0;
  std::size_t max_jumps = 20;  // initial plus boundary breakpoints
  bool quantized = false;      // raw data off the grid, quantized
};

inline Problem random_problem(std::mt19937_64& rng, const ProblemShape& shape) {
  Problem p;
  p.eps = uniform_int(rng, 0, 1) == 0 ? 0.25 : 0.5;
  p.horizon = uniform(rng, 0.5, 2.0);
  p.flux = random_flux(rng, shape.max_deg_u, shape.deg_t);
  const Domain domain = shape.segment ? Domain::segment(uniform(rng, 1.0, 3.0)) : Domain::half_line();
  const std::int64_t kmax = 4;
  const std::size_t n_init = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(shape.max_jumps / 2)));
  const std::size_t n_left = (shape.max_jumps - n_init) / (shape.segment ? 2 : 1);
  const double span = shape.segment ? domain.length() : 3.0;
  StepFunction u_o = random_grid_step(rng, domain.interval(), span, n_init, p.eps, kmax);
  StepFunction u_b = random_grid_step(rng, {0.0, p.horizon}, p.horizon, n_left, p.eps, kmax);
  std::optional<StepFunction> u_b2;
  if (shape.segment) u_b2 = random_grid_step(rng, {0.0, p.horizon}, p.horizon, n_left, p.eps, kmax);
  if (shape.quantized) {
    auto jitter = [&](const StepFunction& u) {
      std::vector<double> v = u.values();
      for (double& x : v) x += uniform(rng, -0.49, 0.49) * p.eps;
      return StepFunction(u.domain(), u.breaks(), std::move(v));
    };
    u_o = jitter(u_o);
    u_b = jitter(u_b);
    if (u_b2) u_b2 = jitter(*u_b2);
  }
  p.raw = IbvpData{u_o, u_b, u_b2, domain};
  p.data = shape.quantized ? quantize_data(p.raw, p.eps) : grid_exact_data(p.raw, p.eps);
  return p;
}

inline Solution solve(const Problem& p, std::size_t depth = 0) {
  if (depth == 0 && p.flux.is_autonomous()) return run(p.flux, p.data, p.horizon);
  return dyadic_solve(p.flux, p.data, depth, p.horizon);
}

}  // namespace wft::testing

#endif  // WFT_TESTS_SUPPORT_HPP_
