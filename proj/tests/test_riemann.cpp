#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wft/riemann.hpp"

using namespace wft;
using wft::testing::burgers;

namespace {

PLCFlux burgers_plc(double eps, Interval hull) { return plc_approximate(burgers(), 0.0, eps, hull); }

// Lower convex (upper concave when `upper`) envelope of the nodes on [a, b]
// evaluated at node j, by brute force over all chords.
double envelope(const PLCFlux& p, std::int64_t a, std::int64_t b, std::int64_t j, bool upper) {
  double best = p.node(j);
  for (std::int64_t i = a; i <= j; ++i) {
    for (std::int64_t k = j; k <= b; ++k) {
      if (i == k) continue;
      const double w = static_cast<double>(j - i) / static_cast<double>(k - i);
      const double c = (1 - w) * p.node(i) + w * p.node(k);
      best = upper ? std::max(best, c) : std::min(best, c);
    }
  }
  return best;
}

void check_fan_against_envelope(const PLCFlux& p, std::int64_t l, std::int64_t r) {
  const WaveFan fan = solve_riemann(p, l, r);
  if (l == r) {
    CHECK(fan.empty());
    return;
  }
  REQUIRE(!fan.empty());
  CHECK(fan.front().left == l);
  CHECK(fan.back().right == r);
  const double eps = p.eps();
  const double scale = 1.0 + p.max_abs_slope();
  for (std::size_t i = 0; i < fan.size(); ++i) {
    const Wave& w = fan[i];
    CHECK(w.left != w.right);
    if (i > 0) {
      CHECK(fan[i - 1].right == w.left);
      CHECK(fan[i - 1].speed < w.speed);
    }
    CHECK(w.speed == doctest::Approx(p.speed(w.left, w.right)));
    CHECK(oleinik_violation(p, w.left, w.right, w.speed) <= 1e-12 * scale);
    // Each wave spans a piece of the envelope: the chord matches the envelope
    // at every node in between.
    const std::int64_t lo = std::min(l, r), hi = std::max(l, r);
    const std::int64_t a = std::min(w.left, w.right), b = std::max(w.left, w.right);
    for (std::int64_t k = a; k <= b; ++k) {
      const double chord = p.node(a) + w.speed * static_cast<double>(k - a) * eps;
      CHECK(chord == doctest::Approx(envelope(p, lo, hi, k, l > r)).epsilon(1e-9).scale(scale));
    }
  }
}

}  // namespace

TEST_SUITE("riemann") {
  TEST_CASE("examples") {
    const PLCFlux p1 = burgers_plc(1.0, {-2.0, 2.0});
    CHECK(solve_riemann(p1, 1, 1).empty());
    const WaveFan shock = solve_riemann(p1, 1, 0);
    REQUIRE(shock.size() == 1);
    CHECK(shock[0] == Wave{1, 0, 0.5});

    const PLCFlux p2 = burgers_plc(0.5, {0.0, 1.0});
    const WaveFan fan = solve_riemann(p2, 0, 2);
    REQUIRE(fan.size() == 2);
    CHECK(fan[0] == Wave{0, 1, 0.25});
    CHECK(fan[1] == Wave{1, 2, 0.75});

    CHECK_THROWS_AS(solve_riemann(p2, 0, 5), InvalidArgument);
  }

  TEST_CASE("collinear pieces merge") {
    const PLCFlux p = plc_approximate(SpaceTimeFlux::in_u({0.0, 2.0}), 0.0, 0.25, {-1.0, 1.0});
    const WaveFan fan = solve_riemann(p, -4, 4);
    REQUIRE(fan.size() == 1);
    CHECK(fan[0].speed == doctest::Approx(2.0));
  }

  TEST_CASE("boundary examples") {
    const PLCFlux p = burgers_plc(1.0, {-2.0, 2.0});
    CHECK(solve_boundary_left(p, 0, 0).empty());
    const WaveFan in = solve_boundary_left(p, 1, 0);
    REQUIRE(in.size() == 1);
    CHECK(in[0] == Wave{1, 0, 0.5});
    CHECK(solve_boundary_left(p, 0, -1).empty());
    for (std::int64_t k = -1; k <= 0; ++k) {
      if (k == -1) continue;
      CHECK((p.node(-1) - p.node(k)) / static_cast<double>(-1 - k) <= 0.0);
    }

    CHECK(solve_boundary_right(p, 0, 0).empty());
    const WaveFan out = solve_boundary_right(p, 0, -1);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == Wave{0, -1, -0.5});
    CHECK(solve_boundary_right(p, 1, 2).empty());
  }

  TEST_CASE("boundary fans are the sign-filtered full fan") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
      const SpaceTimeFlux f = wft::testing::random_flux(rng, 4);
      const PLCFlux p = plc_approximate(f, 0.0, 0.25, {-1.5, 1.5});
      const auto a = wft::testing::uniform_int(rng, p.k_min(), p.k_max());
      const auto b = wft::testing::uniform_int(rng, p.k_min(), p.k_max());
      WaveFan expect_left;
      for (const Wave& w : solve_riemann(p, a, b)) {
        if (w.speed > 0) expect_left.push_back(w);
      }
      CHECK(solve_boundary_left(p, a, b) == expect_left);
      WaveFan expect_right;
      for (const Wave& w : solve_riemann(p, b, a)) {
        if (w.speed < 0) expect_right.push_back(w);
      }
      CHECK(solve_boundary_right(p, b, a) == expect_right);
    }
  }

  TEST_CASE("fans match the brute-force envelope and satisfy Oleinik") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 400; ++trial) {
      const SpaceTimeFlux f = wft::testing::random_flux(rng, 5);
      const double eps = trial % 3 == 0 ? 0.1 : 0.25;
      const PLCFlux p = plc_approximate(f, 0.0, eps, {-1.0, 1.0});
      const auto l = wft::testing::uniform_int(rng, p.k_min(), p.k_max());
      const auto r = wft::testing::uniform_int(rng, p.k_min(), p.k_max());
      check_fan_against_envelope(p, l, r);
    }
  }

  TEST_CASE("resolving a fan's own states again is idempotent") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
      const PLCFlux p = plc_approximate(wft::testing::random_flux(rng, 4), 0.0, 0.25, {-1.0, 1.0});
      const auto l = wft::testing::uniform_int(rng, p.k_min(), p.k_max());
      const auto r = wft::testing::uniform_int(rng, p.k_min(), p.k_max());
      for (const Wave& w : solve_riemann(p, l, r)) {
        const WaveFan again = solve_riemann(p, w.left, w.right);
        REQUIRE(again.size() == 1);
        CHECK(again[0] == w);
      }
    }
  }

  TEST_CASE("oleinik detects an inadmissible jump") {
    const PLCFlux p = burgers_plc(0.5, {0.0, 1.0});
    // Expansion shock 0 -> 1 for Burgers.
    CHECK(oleinik_violation(p, 0, 2, p.speed(0, 2)) > 0.0);
    CHECK(oleinik_violation(p, 2, 0, p.speed(2, 0)) <= 0.0);
  }
}
