#ifndef WFT_VERIFY_HPP_
#define WFT_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wft/nonaut.hpp"
#include "wft/tracker.hpp"

namespace wft {

// ---------------------------------------------------------------------------
// Entropy pairs and test functions

enum class EntropySign { kPlus, kMinus };

/// Semi-Kruzkov pair: eta(u) = (u - k)^+ or (u - k)^-, with flux
/// sgn^+-(u - k) (f(u) - f(k)).
struct SemiEntropyPair {
  EntropySign sign;
  double k;

  /// sgn^+ (1 for s > 0) or sgn^- (-1 for s < 0), zero otherwise.
  double sgn(double u) const {
    if (sign == EntropySign::kPlus) return u > k ? 1.0 : 0.0;
    return u < k ? -1.0 : 0.0;
  }
  double eta(double u) const { return sign == EntropySign::kPlus ? std::max(u - k, 0.0) : std::max(k - u, 0.0); }
  /// Entropy flux for an autonomous flux callable u -> f(u).
  template <class F>
  double flux(const F& f, double u) const {
    const double s = sgn(u);
    return s == 0.0 ? 0.0 : s * (f(u) - f(k));
  }
};

/// phi(t, x) = B((t - t0) / rt) B((x - x0) / rx) with B(s) = (1 - s^2)^2 on
/// |s| < 1.
struct BumpTestFunction {
  double t0;
  double x0;
  double rt;
  double rx;

  static double shape(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return q * q;
  }
  static double shape_derivative(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return -4.0 * s * (1.0 - s * s);
  }
  /// Antiderivative of the shape, clamped to [-1, 1].
  static double shape_integral(double s) {
    s = std::clamp(s, -1.0, 1.0);
    const double s2 = s * s;
    return s * (1.0 - s2 * (2.0 / 3.0 - s2 / 5.0));
  }

  double operator()(double t, double x) const { return shape((t - t0) / rt) * shape((x - x0) / rx); }
  /// Integral of phi over the plane.
  double mass() const { return rt * rx * (16.0 / 15.0) * (16.0 / 15.0); }
};

/// Left-hand side of the entropy inequality for one pair and one test
/// function: space-time integral, initial and terminal terms, and boundary
/// term(s) weighted by `weight`. Computed with the solution's own frozen PLC
/// fluxes and quantized data, for which the quadrature is exact up to
/// rounding. A true solution gives a value >= 0.
double entropy_residual(const Solution& sol, const SemiEntropyPair& pair, const BumpTestFunction& phi,
                        double weight);
/// Same, with weight ||d_u f|| over [0,T] x U.
double entropy_residual(const Solution& sol, const SemiEntropyPair& pair, const BumpTestFunction& phi);

/// ||d_u f|| over [0,T] x U for the solution's flux and data.
double boundary_weight(const Solution& sol);

/// Rounding allowance for entropy_residual.
inline double entropy_tolerance(const BumpTestFunction& phi) { return 1e-7 * phi.mass(); }

struct EntropyCampaign {
  std::size_t evaluated = 0;
  double min_residual = kInfinity;
  double min_scaled = kInfinity;  // residual / max(1, bump mass)
  std::size_t violations = 0;     // residual < -entropy_tolerance
};

/// k values: every grid value of U, midpoints, and values below and above;
/// bump centers near logged events plus uniform ones.
EntropyCampaign entropy_campaign(const Solution& sol, std::size_t k_samples, std::size_t bumps,
                                 std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Boundary conditions

/// The six-case boundary entropy flux F^k(t, u, w).
template <class F>
double boundary_flux_F(const F& f, double t, double u, double w, double k) {
  if (u <= w && w <= k) return f(t, w) - f(t, u);
  if (w <= u && u <= k) return 0.0;
  if (w <= k && k <= u) return f(t, u) - f(t, k);
  if (u <= k && k <= w) return f(t, k) - f(t, u);
  if (k <= u && u <= w) return 0.0;
  return f(t, u) - f(t, w);  // k <= w <= u
}

inline double boundary_flux_F(const SpaceTimeFlux& f, double t, double u, double w, double k) {
  return boundary_flux_F([&](double s, double v) { return f(s, v); }, t, u, w, k);
}

struct AdmissibilityResult {
  double max_flux = -kInfinity;   // max F^k over epochs and grid k between trace and datum
  double max_chord = -kInfinity;  // discrete chord condition, <= 0 when admissible
  double worst_time = 0.0;
};

/// Admissibility of the boundary trace at x = 0 (Side::kRight, the trace is
/// a right limit) or at x = L (Side::kLeft), using the frozen PLC flux of
/// every epoch. The right end is mirrored (x -> L - x, f -> -f).
AdmissibilityResult boundary_admissibility(const Solution& sol, Side side);

// ---------------------------------------------------------------------------
// Stability checks

struct CheckRow {
  double t;
  double measured;
  double bound;
  bool pass;
};

/// measured <= bound (1 + 1e-9) + 1e-12.
bool within_bound(double measured, double bound);

/// L1 contraction between solutions with data a and b (same flux, grid and
/// domain; on the half-line the initial tails must agree).
std::vector<CheckRow> contraction_check(const SpaceTimeFlux& f, const GridData& a, const GridData& b,
                                        double horizon, const std::vector<double>& times,
                                        const TrackerOptions& options = {});

/// Autonomous mode, or non-autonomous with the given dyadic depth.
struct StabilityMode {
  std::optional<std::size_t> depth;
};

/// Distance between the solutions with fluxes f and g against
/// max{1, ||d_u g||} ||d_u (f - g)|| K_t t on [0,t] x U_t.
std::vector<CheckRow> flux_stability_check(const SpaceTimeFlux& f, const SpaceTimeFlux& g,
                                           const GridData& data, double horizon,
                                           const std::vector<double>& times, StabilityMode mode = {},
                                           const TrackerOptions& options = {});

/// The bound factor of flux_stability_check at time t.
double flux_stability_bound(const SpaceTimeFlux& f, const SpaceTimeFlux& g, const GridData& data, double t);

// ---------------------------------------------------------------------------
// Reports

struct Check {
  std::string name;
  double measured;
  double bound;
  bool pass;
  bool enforced = true;  // informational checks never fail a report
  std::string detail;
  bool at_least = false;  // pass means measured >= bound
};

struct Report {
  std::vector<Check> checks;
  bool passed() const;
  void add(Check c) { checks.push_back(std::move(c)); }
};

struct BoundReportOptions {
  std::size_t lipschitz_points = 50;
};

/// Range, total variation, time-Lipschitz, Glimm monotonicity and the
/// termination ledger of a solution.
Report bound_report(const Solution& sol, const BoundReportOptions& options = {});

/// Events violating "weighted count decreases or V drops by at least eps".
std::vector<std::size_t> termination_ledger_violations(const Solution& sol);

// ---------------------------------------------------------------------------
// Profiles

/// Profile at time t: value v0 at x = 0+, then (x_i, v_i) with v_i the value
/// right of x_i. Breakpoints may repeat (a fan leaving a point).
struct ProfileRow {
  double t;
  double v0;
  std::vector<double> x;
  std::vector<double> v;

  StepFunction to_step(const Domain& domain) const;
  friend bool operator==(const ProfileRow&, const ProfileRow&) = default;
};

/// One row per epoch start and a final row at T.
std::vector<ProfileRow> profile_rows(const Solution& sol);

/// Solution skeleton for externally supplied profiles: data and frozen fluxes
/// as for a solve of (f, data, depth), no epochs or log.
Solution solution_frame(const SpaceTimeFlux& f, const GridData& data, std::size_t depth, double horizon);

struct ProfileCheckOptions {
  std::size_t k_samples = 20;
  std::size_t bumps = 10;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
};

/// Checks imported profiles against a frame: initial row, grid values,
/// front kinematics between rows (Rankine-Hugoniot speeds from the frozen
/// flux, no crossings), Oleinik condition, boundary admissibility, entropy
/// falsifier and the bound suite on the reconstructed solution.
Report verify_profiles(const Solution& frame, const std::vector<ProfileRow>& rows,
                       const ProfileCheckOptions& options = {});

/// Solution rebuilt from rows, fronts moving at Rankine-Hugoniot speeds.
/// Throws InvalidArgument when a value is off the grid or out of range.
Solution reconstruct(const Solution& frame, const std::vector<ProfileRow>& rows);

}  // namespace wft

#endif  // WFT_VERIFY_HPP_
