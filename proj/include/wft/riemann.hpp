#ifndef WFT_RIEMANN_HPP_
#define WFT_RIEMANN_HPP_

#include <cstdint>
#include <vector>

#include "wft/flux.hpp"

namespace wft {

/// One jump of a Riemann fan, between grid states.
struct Wave {
  std::int64_t left;
  std::int64_t right;
  double speed;
  friend bool operator==(const Wave&, const Wave&) = default;
};

/// Jumps ordered by strictly increasing speed; states chain left to right.
using WaveFan = std::vector<Wave>;

/// Entropy solution of the Riemann problem (left, right) for a PLC flux.
///
/// left < right: jumps across the lower convex envelope of the nodes on
/// [left, right]; left > right: the upper concave envelope on [right, left].
/// Collinear envelope pieces are merged into a single jump.
WaveFan solve_riemann(const PLCFlux& flux, std::int64_t left, std::int64_t right);

/// Boundary Riemann problem at x = 0: the part of solve_riemann(datum, trace)
/// with strictly positive speed.
WaveFan solve_boundary_left(const PLCFlux& flux, std::int64_t datum, std::int64_t trace);

/// Boundary Riemann problem at x = L: the part of solve_riemann(trace, datum)
/// with strictly negative speed.
WaveFan solve_boundary_right(const PLCFlux& flux, std::int64_t trace, std::int64_t datum);

/// Largest violation of the Oleinik chord inequalities for the jump
/// (left, right) moving at `speed`, over grid k strictly between the states.
/// Nonpositive means admissible.
double oleinik_violation(const PLCFlux& flux, std::int64_t left, std::int64_t right, double speed);

}  // namespace wft

#endif  // WFT_RIEMANN_HPP_
