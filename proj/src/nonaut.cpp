#include "wft/nonaut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace wft {

SlabSchedule::SlabSchedule(std::size_t depth, double horizon) : depth_(depth), horizon_(horizon) {
  if (depth > 30) throw InvalidArgument("dyadic depth too large");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("horizon must be positive");
}

double SlabSchedule::endpoint(std::size_t i) const {
  if (i > slabs()) throw InvalidArgument("slab index out of range");
  if (i == slabs()) return horizon_;
  return static_cast<double>(i) * horizon_ / static_cast<double>(slabs());
}

namespace {

double boundary_terms(const StepFunction& boundary, double t, double initial_trace) {
  return tv(boundary, {0.0, t}) + std::abs(boundary.first() - initial_trace);
}

}  // namespace

double data_variation(const IbvpData& data, double t) {
  double k = tv(data.initial) + boundary_terms(data.boundary_left, t, data.initial.first());
  if (data.boundary_right) {
    k += boundary_terms(*data.boundary_right, t, data.initial.last());
  }
  return k;
}

double data_variation(const GridData& data, double t) {
  std::optional<StepFunction> right;
  if (data.boundary_right) right = data.boundary_right->values();
  return data_variation(IbvpData{data.initial.values(), data.boundary_left.values(), right, data.domain}, t);
}

BoundConstants bound_constants(const SpaceTimeFlux& f, const IbvpData& data, double horizon) {
  validate(data, horizon);
  const Interval hull = data_hull(data, horizon);
  const Interval time{0.0, horizon};
  BoundConstants c;
  c.L = 1.0 + sup_du_norm(f, time, hull);
  c.K = data_variation(data, horizon);
  c.M = f.is_autonomous() ? 0.0 : sup_dtdu_norm(f, time, hull);
  c.O = 0.25 * c.L * c.K * c.M * horizon * horizon;
  return c;
}

BoundConstants bound_constants(const SpaceTimeFlux& f, const GridData& data, double horizon) {
  std::optional<StepFunction> right;
  if (data.boundary_right) right = data.boundary_right->values();
  return bound_constants(f, IbvpData{data.initial.values(), data.boundary_left.values(), right, data.domain},
                         horizon);
}

Solution dyadic_solve(const SpaceTimeFlux& f, const GridData& data, std::size_t depth, double horizon,
                      const TrackerOptions& options) {
  const SlabSchedule schedule(depth, horizon);
  Solution solution;
  solution.eps = data.initial.eps();
  solution.horizon = horizon;
  solution.domain = data.domain;
  solution.flux = f;
  solution.data = data;
  solution.dyadic_depth = depth;
  // The hull is invariant in time, so one node range serves every slab.
  const Interval hull = data_hull(data, horizon);
  GridStepFunction profile = data.initial;
  for (std::size_t i = 0; i < schedule.slabs(); ++i) {
    const double t0 = schedule.endpoint(i);
    const double t1 = schedule.endpoint(i + 1);
    solution.fluxes.push_back({t0, t0, t1, plc_approximate(f, t0, solution.eps, hull)});
    profile = track_span(solution, i, profile, t0, t1, options);
  }
  return solution;
}

Solution dyadic_solve(const SpaceTimeFlux& f, const IbvpData& data, std::size_t depth, double eps,
                      double horizon, const TrackerOptions& options) {
  validate(data, horizon);
  return dyadic_solve(f, quantize_data(data, eps), depth, horizon, options);
}

std::vector<std::int64_t> slab_glimm_trace(const Solution& solution) {
  std::vector<std::int64_t> trace;
  for (const EventRecord& r : solution.log) {
    if (r.kind == EventKind::kInitial) trace.push_back(r.glimm_before);
  }
  return trace;
}

std::vector<double> study_grid(double horizon, std::size_t points, std::size_t depth) {
  std::vector<double> grid;
  const SlabSchedule schedule(depth, horizon);
  for (std::size_t i = 0; i <= schedule.slabs(); ++i) grid.push_back(schedule.endpoint(i));
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(points == 1 ? horizon
                               : horizon * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double sup_l1_distance(const Solution& a, const Solution& b, const std::vector<double>& times) {
  double d = 0.0;
  for (double t : times) d = std::max(d, l1_distance(a.profile_at(t), b.profile_at(t)));
  return d;
}

std::vector<CauchyRow> cauchy_study(const SpaceTimeFlux& f, const GridData& data,
                                    const std::vector<std::size_t>& depths, double horizon,
                                    std::size_t grid_points, const TrackerOptions& options) {
  if (!std::is_sorted(depths.begin(), depths.end())) throw InvalidArgument("depths must be sorted");
  const BoundConstants c = bound_constants(f, data, horizon);
  std::map<std::size_t, Solution> cache;
  auto solve = [&](std::size_t n) -> const Solution& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, dyadic_solve(f, data, n, horizon, options)).first;
    return it->second;
  };
  std::vector<CauchyRow> rows;
  for (std::size_t n : depths) {
    const double d = sup_l1_distance(solve(n), solve(n + 1), study_grid(horizon, grid_points, n + 1));
    rows.push_back({n, d, c.O * std::ldexp(1.0, -static_cast<int>(n)),
                    std::numeric_limits<double>::quiet_NaN()});
    cache.erase(n);
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i + 1].depth == rows[i].depth + 1 && rows[i + 1].sup_distance > 0.0) {
      rows[i].ratio = rows[i].sup_distance / rows[i + 1].sup_distance;
    }
  }
  return rows;
}

}  // namespace wft
