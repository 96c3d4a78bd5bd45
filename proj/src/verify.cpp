#include "wft/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace wft {

namespace {

constexpr std::array<double, 3> kGaussNodes{0.2386191860831969086, 0.6612093864662645136,
                                            0.9324695142031520278};
constexpr std::array<double, 3> kGaussWeights{0.4679139345726910473, 0.3607615730481386076,
                                              0.1713244923791703450};

template <class F>
double gauss6(double a, double b, const F& g) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    s += kGaussWeights[i] * (g(mid - half * kGaussNodes[i]) + g(mid + half * kGaussNodes[i]));
  }
  return s * half;
}

double state(std::int64_t k, double eps) { return static_cast<double>(k) * eps; }

std::int64_t epoch_state(const Epoch& e, std::size_t region) {
  return region == 0 ? e.leading : e.fronts[region - 1].right;
}

// Integral of eta(w(.)) * B((. - c) / r) over the window for a step function w.
double step_against_shape(const StepFunction& w, const Interval& window, const SemiEntropyPair& pair,
                          double c, double r) {
  const double lo = std::max(window.lo, c - r);
  const double hi = std::min(window.hi, c + r);
  if (!(lo < hi)) return 0.0;
  const auto& b = w.breaks();
  const auto& v = w.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::max(lo, i == 0 ? -kInfinity : b[i - 1]);
    const double z = std::min(hi, i == b.size() ? kInfinity : b[i]);
    if (!(a < z)) continue;
    const double e = pair.eta(v[i]);
    if (e == 0.0) continue;
    sum += e * r * (BumpTestFunction::shape_integral((z - c) / r) - BumpTestFunction::shape_integral((a - c) / r));
  }
  return sum;
}

// Differing tails on the half-line make the distance infinite.
double l1_or_inf(const StepFunction& a, const StepFunction& b) {
  try {
    return l1_distance(a, b);
  } catch (const InvalidArgument&) {
    return kInfinity;
  }
}

std::size_t slab_of(const Solution& sol, double t) {
  std::size_t i = 0;
  while (i + 1 < sol.fluxes.size() && sol.fluxes[i + 1].t_begin <= t) ++i;
  return i;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entropy residual

double boundary_weight(const Solution& sol) {
  return sup_du_norm(sol.flux, {0.0, sol.horizon}, data_hull(sol.data, sol.horizon));
}

double entropy_residual(const Solution& sol, const SemiEntropyPair& pair, const BumpTestFunction& phi) {
  return entropy_residual(sol, pair, phi, boundary_weight(sol));
}

double entropy_residual(const Solution& sol, const SemiEntropyPair& pair, const BumpTestFunction& phi,
                        double weight) {
  if (!(phi.rt > 0.0) || !(phi.rx > 0.0)) throw InvalidArgument("bump radii must be positive");
  const double T = sol.horizon;
  const double L = sol.domain.length();
  const double eps = sol.eps;
  const double xlo = phi.x0 - phi.rx;
  const double xhi = phi.x0 + phi.rx;
  const double ta = std::max(0.0, phi.t0 - phi.rt);
  const double tb = std::min(T, phi.t0 + phi.rt);
  std::size_t budget = 50'000'000;

  double total = 0.0;
  if (ta < tb && xhi > 0.0 && xlo < L) {
    for (const Epoch& e : sol.epochs) {
      const double a = std::max(e.t_begin, ta);
      const double b = std::min(e.t_end, tb);
      if (!(a < b)) continue;
      const PLCFlux& plc = sol.fluxes.at(e.flux_index).plc;
      auto f = [&](double u) { return plc.extended(u); };
      const auto& fr = e.fronts;
      const std::size_t n = fr.size();

      auto first_at_or_after = [&](double t, double x, bool inclusive) {
        return static_cast<std::size_t>(
            std::partition_point(fr.begin(), fr.end(),
                                 [&](const Front& g) { return inclusive ? g.position(t) <= x : g.position(t) < x; }) -
            fr.begin());
      };
      const std::size_t i_lo = std::min(first_at_or_after(a, xlo, false), first_at_or_after(b, xlo, false));
      const std::size_t i_hi = std::max(first_at_or_after(a, xhi, true), first_at_or_after(b, xhi, true));

      // Times where a relevant front crosses the support edges.
      std::vector<double> cuts{a, b};
      for (std::size_t i = i_lo; i < std::min(i_hi + 1, n); ++i) {
        const Front& g = fr[i];
        if (g.speed == 0.0) continue;
        for (double edge : {xlo, xhi}) {
          const double tc = g.anchor_t + (edge - g.anchor_x) / g.speed;
          if (tc > a && tc < b) cuts.push_back(tc);
        }
      }
      std::sort(cuts.begin(), cuts.end());

      std::vector<double> eta(i_hi - i_lo + 1);
      std::vector<double> flux(eta.size());
      for (std::size_t j = i_lo; j <= i_hi; ++j) {
        const double u = state(epoch_state(e, j), eps);
        eta[j - i_lo] = pair.eta(u);
        flux[j - i_lo] = pair.flux(f, u);
      }
      if (budget < cuts.size() * eta.size()) throw std::runtime_error("entropy_residual: quadrature budget exceeded");
      budget -= cuts.size() * eta.size();

      auto integrand = [&](double t) {
        const double st = (t - phi.t0) / phi.rt;
        const double bt = BumpTestFunction::shape(st);
        const double dbt = BumpTestFunction::shape_derivative(st) / phi.rt;
        double s = 0.0;
        for (std::size_t j = i_lo; j <= i_hi; ++j) {
          const double xl = j == 0 ? 0.0 : std::max(0.0, fr[j - 1].position(t));
          const double xr = j == n ? L : std::min(L, fr[j].position(t));
          if (!(xl < xr)) continue;
          const double sl = (xl - phi.x0) / phi.rx;
          const double sr = (xr - phi.x0) / phi.rx;
          const double et = eta[j - i_lo];
          const double fl = flux[j - i_lo];
          if (et != 0.0) {
            s += et * dbt * phi.rx *
                 (BumpTestFunction::shape_integral(sr) - BumpTestFunction::shape_integral(sl));
          }
          if (fl != 0.0) {
            s += fl * bt * (BumpTestFunction::shape(sr) - BumpTestFunction::shape(sl));
          }
        }
        return s;
      };
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        if (cuts[c] < cuts[c + 1]) total += gauss6(cuts[c], cuts[c + 1], integrand);
      }
    }
  }

  const Interval space = sol.domain.interval();
  const double b0 = BumpTestFunction::shape((0.0 - phi.t0) / phi.rt);
  if (b0 != 0.0) total += b0 * step_against_shape(sol.data.initial.values(), space, pair, phi.x0, phi.rx);
  const double bT = BumpTestFunction::shape((T - phi.t0) / phi.rt);
  if (bT != 0.0) total -= bT * step_against_shape(sol.profile_at(T), space, pair, phi.x0, phi.rx);

  const Interval time{0.0, T};
  const double bx0 = BumpTestFunction::shape((0.0 - phi.x0) / phi.rx);
  if (bx0 != 0.0) {
    total += weight * bx0 * step_against_shape(sol.data.boundary_left.values(), time, pair, phi.t0, phi.rt);
  }
  if (sol.data.boundary_right) {
    const double bxL = BumpTestFunction::shape((L - phi.x0) / phi.rx);
    if (bxL != 0.0) {
      total += weight * bxL * step_against_shape(sol.data.boundary_right->values(), time, pair, phi.t0, phi.rt);
    }
  }
  return total;
}

EntropyCampaign entropy_campaign(const Solution& sol, std::size_t k_samples, std::size_t bumps,
                                 std::mt19937_64& rng) {
  EntropyCampaign out;
  const double eps = sol.eps;
  const Interval hull = data_hull(sol.data, sol.horizon);
  const auto k_lo = static_cast<std::int64_t>(std::llround(hull.lo / eps));
  const auto k_hi = static_cast<std::int64_t>(std::llround(hull.hi / eps));
  std::vector<double> ks;
  for (std::int64_t k = k_lo - 2; k <= k_hi + 2; ++k) {
    ks.push_back(state(k, eps));
    ks.push_back(state(k, eps) + 0.5 * eps);
  }
  ks.push_back(hull.lo - 3.7 * eps);
  ks.push_back(hull.hi + 3.7 * eps);

  // Spatial extent of the interesting region.
  double extent = sol.domain.is_segment() ? sol.domain.length() : 1.0;
  if (!sol.domain.is_segment()) {
    for (const Epoch& e : sol.epochs) {
      for (const Front& g : e.fronts) extent = std::max({extent, g.position(e.t_begin), g.position(e.t_end)});
    }
    for (double b : sol.data.initial.indices().breaks()) extent = std::max(extent, b);
    extent *= 1.2;
  }
  std::vector<std::pair<double, double>> hot;
  for (const Epoch& e : sol.epochs) {
    for (const Front& g : e.fronts) {
      if (g.anchor_t == e.t_begin) hot.emplace_back(e.t_begin, g.anchor_x);
    }
  }

  const double weight = boundary_weight(sol);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BumpTestFunction> phis;
  for (std::size_t i = 0; i < bumps; ++i) {
    BumpTestFunction phi{};
    phi.rt = sol.horizon * (0.05 + 0.45 * unit(rng));
    phi.rx = extent * (0.05 + 0.45 * unit(rng));
    if (i % 2 == 0 && !hot.empty()) {
      const auto& [t, x] = hot[std::uniform_int_distribution<std::size_t>(0, hot.size() - 1)(rng)];
      phi.t0 = t + phi.rt * 0.5 * (unit(rng) - 0.5);
      phi.x0 = x + phi.rx * 0.5 * (unit(rng) - 0.5);
    } else {
      phi.t0 = sol.horizon * (1.2 * unit(rng) - 0.1);
      phi.x0 = extent * (1.2 * unit(rng) - 0.1);
    }
    phis.push_back(phi);
  }
  for (std::size_t s = 0; s < k_samples; ++s) {
    SemiEntropyPair pair{unit(rng) < 0.5 ? EntropySign::kPlus : EntropySign::kMinus,
                         ks[std::uniform_int_distribution<std::size_t>(0, ks.size() - 1)(rng)]};
    for (const auto& phi : phis) {
      const double r = entropy_residual(sol, pair, phi, weight);
      ++out.evaluated;
      out.min_residual = std::min(out.min_residual, r);
      out.min_scaled = std::min(out.min_scaled, r / phi.mass());
      if (r < -entropy_tolerance(phi)) ++out.violations;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary admissibility

AdmissibilityResult boundary_admissibility(const Solution& sol, Side side) {
  AdmissibilityResult out;
  const bool left_end = side == Side::kRight;
  if (!left_end && !sol.domain.is_segment()) throw InvalidArgument("no right boundary on the half-line");
  const double mirror = left_end ? 1.0 : -1.0;
  for (const Epoch& e : sol.epochs) {
    const PLCFlux& plc = sol.fluxes.at(e.flux_index).plc;
    const std::int64_t trace = left_end ? e.leading : (e.fronts.empty() ? e.leading : e.fronts.back().right);
    const std::int64_t datum = left_end ? e.datum_left : e.datum_right.value();
    // States are passed as grid indices.
    auto f = [&](double, double k) { return mirror * plc.node(std::llround(k)); };
    for (std::int64_t k = std::min(trace, datum); k <= std::max(trace, datum); ++k) {
      const double value = boundary_flux_F(f, e.t_begin, static_cast<double>(trace),
                                           static_cast<double>(datum), static_cast<double>(k));
      if (value > out.max_flux) {
        out.max_flux = value;
        out.worst_time = e.t_begin;
      }
      if (k != trace) {
        const double chord = mirror * (plc.node(trace) - plc.node(k)) / (static_cast<double>(trace - k) * sol.eps);
        out.max_chord = std::max(out.max_chord, chord);
      }
    }
  }
  if (out.max_chord == -kInfinity) out.max_chord = 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Stability

bool within_bound(double measured, double bound) { return measured <= bound * (1.0 + 1e-9) + 1e-12; }

namespace {

double boundary_l1(const GridStepFunction& a, const GridStepFunction& b, double t) {
  if (t <= 0.0) return 0.0;
  return l1_distance(a.values(), b.values(), {0.0, t});
}

Interval boundary_hull(const GridStepFunction& a, const GridStepFunction& b, double t) {
  return range_hull({{a.values(), {0.0, t}}, {b.values(), {0.0, t}}});
}

}  // namespace

std::vector<CheckRow> contraction_check(const SpaceTimeFlux& f, const GridData& a, const GridData& b,
                                        double horizon, const std::vector<double>& times,
                                        const TrackerOptions& options) {
  if (a.initial.eps() != b.initial.eps()) throw InvalidArgument("contraction_check: grids differ");
  if (!(a.domain == b.domain)) throw InvalidArgument("contraction_check: domains differ");
  const Solution u = run(f, a, horizon, options);
  const Solution w = run(f, b, horizon, options);
  const double initial = l1_distance(a.initial.values(), b.initial.values());
  std::vector<CheckRow> rows;
  for (double t : times) {
    double bound = initial;
    const Interval tbox{0.0, t};
    bound += sup_du_norm(f, tbox, boundary_hull(a.boundary_left, b.boundary_left, t)) *
             boundary_l1(a.boundary_left, b.boundary_left, t);
    if (a.boundary_right) {
      bound += sup_du_norm(f, tbox, boundary_hull(*a.boundary_right, *b.boundary_right, t)) *
               boundary_l1(*a.boundary_right, *b.boundary_right, t);
    }
    const double measured = l1_distance(u.profile_at(t), w.profile_at(t));
    rows.push_back({t, measured, bound, within_bound(measured, bound)});
  }
  return rows;
}

double flux_stability_bound(const SpaceTimeFlux& f, const SpaceTimeFlux& g, const GridData& data, double t) {
  if (t <= 0.0) return 0.0;
  const Interval tbox{0.0, t};
  const Interval hull = data_hull(data, t);
  const double lip = std::max(1.0, sup_du_norm(g, tbox, hull));
  return lip * sup_du_norm(f - g, tbox, hull) * data_variation(data, t) * t;
}

std::vector<CheckRow> flux_stability_check(const SpaceTimeFlux& f, const SpaceTimeFlux& g,
                                           const GridData& data, double horizon,
                                           const std::vector<double>& times, StabilityMode mode,
                                           const TrackerOptions& options) {
  auto solve = [&](const SpaceTimeFlux& h) {
    return mode.depth ? dyadic_solve(h, data, *mode.depth, horizon, options) : run(h, data, horizon, options);
  };
  const Solution u = solve(f);
  const Solution v = solve(g);
  std::vector<CheckRow> rows;
  for (double t : times) {
    const double measured = l1_distance(u.profile_at(t), v.profile_at(t));
    const double bound = flux_stability_bound(f, g, data, t);
    rows.push_back({t, measured, bound, within_bound(measured, bound)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Bound report

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.enforced; });
}

std::vector<std::size_t> termination_ledger_violations(const Solution& sol) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < sol.log.size(); ++i) {
    const EventRecord& r = sol.log[i];
    if (r.kind == EventKind::kInitial) continue;
    if (!(r.sharp_after < r.sharp_before || r.glimm_after <= r.glimm_before - 1)) bad.push_back(i);
  }
  return bad;
}

Report bound_report(const Solution& sol, const BoundReportOptions& options) {
  Report report;
  const double eps = sol.eps;
  const double T = sol.horizon;

  // Range of every state against the hull of the data seen so far.
  {
    double excess = 0.0;
    double worst_t = 0.0;
    for (const Epoch& e : sol.epochs) {
      const Interval h = data_hull(sol.data, e.t_begin);
      for (std::size_t j = 0; j <= e.fronts.size(); ++j) {
        const double u = state(epoch_state(e, j), eps);
        const double d = std::max({0.0, h.lo - u, u - h.hi});
        if (d > excess) {
          excess = d;
          worst_t = e.t_begin;
        }
      }
    }
    report.add({"range", excess, 0.0, excess == 0.0, true, "t=" + std::to_string(worst_t)});
  }

  // Total variation against the data variation.
  {
    double worst_ratio = -kInfinity;
    Check c{"total_variation", 0.0, 0.0, true, true, ""};
    for (const Epoch& e : sol.epochs) {
      std::int64_t units = 0;
      for (const Front& g : e.fronts) units += std::abs(g.right - g.left);
      const double measured = state(units, eps);
      const double bound = data_variation(sol.data, e.t_begin);
      const double ratio = bound > 0.0 ? measured / bound : (measured > 0.0 ? kInfinity : 0.0);
      if (!within_bound(measured, bound)) c.pass = false;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        c.measured = measured;
        c.bound = bound;
        c.detail = "t=" + std::to_string(e.t_begin);
      }
    }
    report.add(c);
  }

  // Lipschitz continuity in time on a uniform grid.
  {
    const std::size_t m = std::max<std::size_t>(options.lipschitz_points, 2);
    std::vector<double> ts(m);
    std::vector<StepFunction> us;
    std::vector<double> cs(m);
    const Interval hull_all = data_hull(sol.data, T);
    for (std::size_t i = 0; i < m; ++i) {
      ts[i] = i + 1 == m ? T : T * static_cast<double>(i) / static_cast<double>(m - 1);
      us.push_back(sol.profile_at(ts[i]));
      const Interval h = data_hull(sol.data, ts[i]);
      cs[i] = sup_du_norm(sol.flux, {0.0, std::max(ts[i], 0.0)}, h) * data_variation(sol.data, ts[i]);
    }
    (void)hull_all;
    Check c{"time_lipschitz", 0.0, 0.0, true, true, ""};
    double worst = -kInfinity;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double measured = l1_or_inf(us[i], us[j]);
        const double bound = cs[j] * (ts[j] - ts[i]);
        if (!within_bound(measured, bound)) c.pass = false;
        const double slack = measured - bound;
        if (slack > worst) {
          worst = slack;
          c.measured = measured;
          c.bound = bound;
          c.detail = "t1=" + std::to_string(ts[i]) + " t2=" + std::to_string(ts[j]);
        }
      }
    }
    report.add(c);
  }

  if (!sol.log.empty()) {
    std::int64_t increase = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < sol.log.size(); ++i) {
      const EventRecord& r = sol.log[i];
      const std::int64_t step = r.glimm_after - r.glimm_before;
      const std::int64_t chain = i == 0 ? 0 : r.glimm_before - sol.log[i - 1].glimm_after;
      if (std::max(step, chain) > increase) {
        increase = std::max(step, chain);
        where = i;
      }
    }
    report.add({"glimm_monotone", state(increase, eps), 0.0, increase <= 0, true,
                "event " + std::to_string(where)});
    const auto bad = termination_ledger_violations(sol);
    report.add({"termination_ledger", static_cast<double>(bad.size()), 0.0, bad.empty(), false,
                bad.empty() ? "" : "first event " + std::to_string(bad.front())});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Profiles

StepFunction ProfileRow::to_step(const Domain& domain) const {
  std::vector<double> values{v0};
  values.insert(values.end(), v.begin(), v.end());
  return StepFunction(domain.interval(), x, std::move(values));
}

std::vector<ProfileRow> profile_rows(const Solution& sol) {
  std::vector<ProfileRow> rows;
  auto row_at = [&](const Epoch& e, double t) {
    ProfileRow row{t, state(e.leading, sol.eps), {}, {}};
    double prev = 0.0;
    for (const Front& g : e.fronts) {
      prev = std::min(std::max(prev, g.position(t)), sol.domain.length());
      row.x.push_back(prev);
      row.v.push_back(state(g.right, sol.eps));
    }
    return row;
  };
  for (const Epoch& e : sol.epochs) rows.push_back(row_at(e, e.t_begin));
  if (!sol.epochs.empty()) rows.push_back(row_at(sol.epochs.back(), sol.horizon));
  return rows;
}

Solution solution_frame(const SpaceTimeFlux& f, const GridData& data, std::size_t depth, double horizon) {
  Solution frame;
  frame.eps = data.initial.eps();
  frame.horizon = horizon;
  frame.domain = data.domain;
  frame.flux = f;
  frame.data = data;
  frame.dyadic_depth = depth;
  const Interval hull = data_hull(data, horizon);
  const SlabSchedule schedule(depth, horizon);
  for (std::size_t i = 0; i < schedule.slabs(); ++i) {
    const double t0 = schedule.endpoint(i);
    frame.fluxes.push_back({t0, t0, schedule.endpoint(i + 1), plc_approximate(f, t0, frame.eps, hull)});
  }
  return frame;
}

Solution reconstruct(const Solution& frame, const std::vector<ProfileRow>& rows) {
  if (rows.size() < 2) throw InvalidArgument("reconstruct: need at least two profile rows");
  Solution sol = frame;
  sol.epochs.clear();
  sol.log.clear();
  const double eps = frame.eps;
  for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
    const ProfileRow& row = rows[r];
    if (!(row.t < rows[r + 1].t)) throw InvalidArgument("reconstruct: times must increase");
    if (row.x.size() != row.v.size()) throw InvalidArgument("reconstruct: ragged row");
    const std::size_t slab = slab_of(frame, row.t);
    const PLCFlux& plc = frame.fluxes.at(slab).plc;
    Epoch e{row.t, rows[r + 1].t, grid_index(row.v0, eps), {}, frame.data.boundary_left.index_at(row.t),
            std::nullopt, slab};
    if (frame.data.boundary_right) e.datum_right = frame.data.boundary_right->index_at(row.t);
    std::int64_t left = e.leading;
    if (!plc.contains(left)) throw InvalidArgument("reconstruct: state outside the flux range");
    for (std::size_t i = 0; i < row.x.size(); ++i) {
      const std::int64_t right = grid_index(row.v[i], eps);
      if (!plc.contains(right)) throw InvalidArgument("reconstruct: state outside the flux range");
      if (right == left) continue;
      e.fronts.push_back({row.x[i], row.t, plc.speed(left, right), left, right});
      left = right;
    }
    sol.epochs.push_back(std::move(e));
  }
  sol.epochs.back().t_end = frame.horizon;
  return sol;
}

Report verify_profiles(const Solution& frame, const std::vector<ProfileRow>& rows,
                       const ProfileCheckOptions& options) {
  Report report;
  const double T = frame.horizon;
  const double L = frame.domain.length();

  // Structure.
  std::string problem;
  if (rows.size() < 2) problem = "fewer than two rows";
  for (std::size_t r = 0; problem.empty() && r < rows.size(); ++r) {
    const ProfileRow& row = rows[r];
    if (row.x.size() != row.v.size()) problem = "ragged row";
    if (r > 0 && !(rows[r - 1].t < row.t)) problem = "times not increasing";
    for (std::size_t i = 0; problem.empty() && i < row.x.size(); ++i) {
      if (row.x[i] < 0.0 || row.x[i] > L || (i > 0 && row.x[i] < row.x[i - 1])) {
        problem = "breakpoints out of order at row " + std::to_string(r);
      }
    }
  }
  if (problem.empty() && (rows.front().t != 0.0 || rows.back().t != T)) problem = "rows must span [0, T]";
  report.add({"structure", problem.empty() ? 0.0 : 1.0, 0.0, problem.empty(), true, problem});
  if (!problem.empty()) return report;

  Solution sol;
  try {
    sol = reconstruct(frame, rows);
  } catch (const InvalidArgument& e) {
    report.add({"grid_values", 1.0, 0.0, false, true, e.what()});
    return report;
  }
  report.add({"grid_values", 0.0, 0.0, true, true, ""});

  double scale = 1.0;
  for (const ProfileRow& row : rows) {
    scale = std::max(scale, std::abs(row.v0));
    for (double v : row.v) scale = std::max(scale, std::abs(v));
  }
  const double tol = options.tolerance * scale * std::max(1.0, T);

  const double initial = l1_or_inf(rows.front().to_step(frame.domain), frame.data.initial.values());
  report.add({"initial_datum", initial, tol, initial <= tol, true, ""});

  // Kinematics: each row advanced at its Rankine-Hugoniot speeds must give
  // the next row, without fronts crossing or leaving the domain.
  {
    double mismatch = 0.0;
    double crossing = 0.0;
    std::string where;
    for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
      const Epoch& e = sol.epochs[r];
      const double t = rows[r + 1].t;
      double prev = 0.0;
      for (const Front& g : e.fronts) {
        const double x = g.position(t);
        crossing = std::max({crossing, prev - x, -x, x - L});
        prev = std::max(prev, x);
      }
      // Epoch r carried to the next row time (profile_at(t) would already
      // return the next epoch).
      std::vector<double> xs, vs;
      double p = 0.0;
      for (const Front& g : e.fronts) {
        p = std::min(std::max(p, g.position(t)), L);
        xs.push_back(p);
        vs.push_back(state(g.right, frame.eps));
      }
      const ProfileRow predicted{t, state(e.leading, frame.eps), std::move(xs), std::move(vs)};
      const double d = l1_or_inf(predicted.to_step(frame.domain), rows[r + 1].to_step(frame.domain));
      if (d > mismatch) {
        mismatch = d;
        where = "row " + std::to_string(r + 1);
      }
    }
    report.add({"front_kinematics", mismatch, tol, mismatch <= tol, true, where});
    report.add({"front_ordering", crossing, tol, crossing <= tol, true, ""});
  }

  {
    double worst = 0.0;
    for (const Epoch& e : sol.epochs) {
      const PLCFlux& plc = sol.fluxes.at(e.flux_index).plc;
      for (const Front& g : e.fronts) worst = std::max(worst, oleinik_violation(plc, g.left, g.right, g.speed));
    }
    report.add({"oleinik", worst, tol, worst <= tol, true, ""});
  }

  {
    const AdmissibilityResult left = boundary_admissibility(sol, Side::kRight);
    double worst = std::max(left.max_flux, left.max_chord);
    if (sol.domain.is_segment()) {
      const AdmissibilityResult right = boundary_admissibility(sol, Side::kLeft);
      worst = std::max({worst, right.max_flux, right.max_chord});
    }
    report.add({"boundary_admissibility", worst, 1e-12, worst <= 1e-12, true, ""});
  }

  {
    std::mt19937_64 rng(options.seed);
    const EntropyCampaign c = entropy_campaign(sol, options.k_samples, options.bumps, rng);
    report.add({"entropy", c.min_scaled, -1e-6, c.min_scaled >= -1e-6, true,
                std::to_string(c.violations) + " of " + std::to_string(c.evaluated) + " below tolerance", true});
  }

  for (Check& c : bound_report(sol).checks) report.add(std::move(c));
  return report;
}

}  // namespace wft
