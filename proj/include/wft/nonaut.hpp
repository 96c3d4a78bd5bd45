#ifndef WFT_NONAUT_HPP_
#define WFT_NONAUT_HPP_

#include <cstddef>
#include <vector>

#include "wft/tracker.hpp"

namespace wft {

/// Dyadic partition of [0, T] into 2^n slabs; slab i freezes the flux at its
/// left endpoint.
class SlabSchedule {
 public:
  SlabSchedule(std::size_t depth, double horizon);

  std::size_t depth() const { return depth_; }
  std::size_t slabs() const { return std::size_t{1} << depth_; }
  /// T_n^i = i T / 2^n, i = 0..slabs(). The last endpoint is exactly T.
  double endpoint(std::size_t i) const;
  double frozen_time(std::size_t i) const { return endpoint(i); }

 private:
  std::size_t depth_;
  double horizon_;
};

struct BoundConstants {
  double L = 1.0;  // 1 + ||d_u f|| on [0,T] x U
  double K = 0.0;  // total variation of the data plus corner jumps
  double M = 0.0;  // ||d_t d_u f|| on [0,T] x U
  double O = 0.0;  // L K M T^2 / 4
};

/// tv(u_o) + tv(u_b; [0,t]) + |u_b(0+) - u_o(0+)|, plus the matching terms at
/// x = L on a segment.
double data_variation(const IbvpData& data, double t);
double data_variation(const GridData& data, double t);

BoundConstants bound_constants(const SpaceTimeFlux& f, const IbvpData& data, double horizon);
BoundConstants bound_constants(const SpaceTimeFlux& f, const GridData& data, double horizon);

/// Composite solution u_n: on each slab the autonomous tracker with the flux
/// frozen at the slab's left endpoint, restarted from the previous slab's
/// final profile. Depth 0 with an autonomous flux equals run().
Solution dyadic_solve(const SpaceTimeFlux& f, const GridData& data, std::size_t depth, double horizon,
                      const TrackerOptions& options = {});
Solution dyadic_solve(const SpaceTimeFlux& f, const IbvpData& data, std::size_t depth, double eps,
                      double horizon, const TrackerOptions& options = {});

/// Glimm functional (grid units) at the start of every slab, before the
/// restart Riemann problems are solved.
std::vector<std::int64_t> slab_glimm_trace(const Solution& solution);

struct CauchyRow {
  std::size_t depth;
  double sup_distance;  // sup over the time grid of ||u_{n+1}(t) - u_n(t)||_1
  double bound;         // O 2^-n
  double ratio;         // sup_distance(n) / sup_distance(n+1); NaN when undefined
};

/// Time grid of `points` uniform samples of [0, T] merged with all slab
/// endpoints of depth `depth`.
std::vector<double> study_grid(double horizon, std::size_t points, std::size_t depth);

/// Distances between consecutive dyadic depths. Depths must be sorted.
std::vector<CauchyRow> cauchy_study(const SpaceTimeFlux& f, const GridData& data,
                                    const std::vector<std::size_t>& depths, double horizon,
                                    std::size_t grid_points = 50, const TrackerOptions& options = {});

/// sup over `times` of the L1 distance between two solutions.
double sup_l1_distance(const Solution& a, const Solution& b, const std::vector<double>& times);

}  // namespace wft

#endif  // WFT_NONAUT_HPP_
