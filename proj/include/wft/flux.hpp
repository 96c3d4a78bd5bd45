#ifndef WFT_FLUX_HPP_
#define WFT_FLUX_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wft/interval.hpp"

namespace wft {

/// Polynomial flux f(t, u) = sum_{j,k} c(j, k) t^j u^k.
///
/// Row index is the power of t, column index the power of u. Derivatives are
/// obtained by shifting coefficients, so du() and dtdu() are exact. The
/// autonomous case is a single-row matrix.
class SpaceTimeFlux {
 public:
  SpaceTimeFlux();  // the zero flux
  explicit SpaceTimeFlux(Eigen::MatrixXd coefficients);

  /// Autonomous flux from coefficients of 1, u, u^2, ...
  static SpaceTimeFlux in_u(const std::vector<double>& coefficients);

  double operator()(double t, double u) const;

  SpaceTimeFlux du() const;
  SpaceTimeFlux dt() const;
  SpaceTimeFlux dtdu() const { return du().dt(); }

  /// Frozen flux u -> f(t, u) as an autonomous polynomial.
  SpaceTimeFlux frozen_at(double t) const;

  int deg_t() const { return static_cast<int>(coefficients_.rows()) - 1; }
  int deg_u() const { return static_cast<int>(coefficients_.cols()) - 1; }
  bool is_autonomous() const { return deg_t() == 0; }
  bool is_zero() const { return coefficients_.isZero(0.0); }

  const Eigen::MatrixXd& coefficients() const { return coefficients_; }

  friend SpaceTimeFlux operator+(const SpaceTimeFlux& a, const SpaceTimeFlux& b);
  friend SpaceTimeFlux operator-(const SpaceTimeFlux& a, const SpaceTimeFlux& b);
  friend SpaceTimeFlux operator*(double s, const SpaceTimeFlux& a);

 private:
  void trim();
  Eigen::MatrixXd coefficients_;
};

/// Upper bound on sup |p(t, u)| over the box t_box x u_box.
///
/// Branch and bound with interval Horner evaluation. Boxes are pruned once
/// their enclosure is within 1e-12 (relative) of the best value seen at a
/// sample point. The returned value is the largest surviving enclosure, so it
/// never underestimates the true sup (up to floating-point rounding in the
/// interval arithmetic).
double sup_abs(const SpaceTimeFlux& p, const Interval& t_box, const Interval& u_box);

/// ||d_u f||_{L^inf(t_box x u_box)}.
inline double sup_du_norm(const SpaceTimeFlux& f, const Interval& t_box,
                          const Interval& u_box) {
  return sup_abs(f.du(), t_box, u_box);
}

/// ||d_t d_u f||_{L^inf(t_box x u_box)}.
inline double sup_dtdu_norm(const SpaceTimeFlux& f, const Interval& t_box,
                            const Interval& u_box) {
  return sup_abs(f.dtdu(), t_box, u_box);
}

/// Piecewise linear continuous interpolant of u -> f(t_frozen, u) on the grid
/// eps * Z, restricted to nodes k_min..k_max.
///
/// States are integer grid indices; state index k stands for u = k * eps.
class PLCFlux {
 public:
  PLCFlux(double eps, std::int64_t k_min, std::vector<double> nodes);

  double eps() const { return eps_; }
  std::int64_t k_min() const { return k_min_; }
  std::int64_t k_max() const { return k_min_ + static_cast<std::int64_t>(nodes_.size()) - 1; }
  bool contains(std::int64_t k) const { return k_min() <= k && k <= k_max(); }

  /// Exact node value f(t_frozen, k * eps).
  double node(std::int64_t k) const;
  /// Slope on the cell [k eps, (k+1) eps].
  double slope(std::int64_t k) const;
  /// Interpolated value at an arbitrary state.
  double operator()(double u) const;
  /// Same, continued linearly by the end slopes outside the node range.
  double extended(double u) const;

  /// Rankine-Hugoniot speed of the jump between grid states a != b.
  double speed(std::int64_t a, std::int64_t b) const;

  /// max |slope| over cells inside [lo, hi] (grid indices).
  double max_abs_slope(std::int64_t lo, std::int64_t hi) const;
  double max_abs_slope() const { return max_abs_slope(k_min(), k_max()); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& slopes() const { return slopes_; }

 private:
  double eps_;
  std::int64_t k_min_;
  std::vector<double> nodes_;
  std::vector<double> slopes_;
};

/// Builds the PLC interpolant of f(t_frozen, .) on eps * Z covering `hull`.
/// Node range is [floor(hull.lo / eps), ceil(hull.hi / eps)].
PLCFlux plc_approximate(const SpaceTimeFlux& f, double t_frozen, double eps,
                        const Interval& hull);

/// Grid index of a state known to lie on eps * Z (throws otherwise).
std::int64_t grid_index(double u, double eps);

}  // namespace wft

#endif  // WFT_FLUX_HPP_
