#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wft/nonaut.hpp"

using namespace wft;
using wft::testing::burgers;
using wft::testing::step;

namespace {

constexpr Interval kHalf{0.0, kInfinity};

SpaceTimeFlux one_plus_t_u() {
  Eigen::MatrixXd c(2, 2);
  c << 0, 1, 0, 1;
  return SpaceTimeFlux(c);
}

SpaceTimeFlux one_plus_t_burgers() {
  Eigen::MatrixXd c(2, 3);
  c << 0, 0, 0.5, 0, 0, 0.5;
  return SpaceTimeFlux(c);
}

IbvpData unit_step(double horizon) {
  return {step(kHalf, 1, {{1, 0}}), StepFunction({0, horizon}, 1.0), std::nullopt, Domain::half_line()};
}

}  // namespace

TEST_SUITE("nonaut") {
  TEST_CASE("slab schedule") {
    const SlabSchedule s(3, 0.7);
    CHECK(s.slabs() == 8);
    CHECK(s.endpoint(0) == 0.0);
    CHECK(s.endpoint(8) == 0.7);
    CHECK(s.endpoint(4) == doctest::Approx(0.35));
    CHECK(s.frozen_time(2) == s.endpoint(2));
    for (std::size_t i = 0; i < 8; ++i) CHECK(s.endpoint(i) < s.endpoint(i + 1));
    CHECK_THROWS_AS(SlabSchedule(31, 1.0), InvalidArgument);
    CHECK_THROWS_AS(SlabSchedule(2, 0.0), InvalidArgument);
    CHECK_THROWS_AS(s.endpoint(9), InvalidArgument);
  }

  TEST_CASE("transport with a time-dependent speed") {
    const Solution n0 = dyadic_solve(one_plus_t_u(), unit_step(1.0), 0, 1.0, 1.0);
    const Solution n1 = dyadic_solve(one_plus_t_u(), unit_step(1.0), 1, 1.0, 1.0);
    REQUIRE(n0.profile_at(1.0).breaks().size() == 1);
    REQUIRE(n1.profile_at(1.0).breaks().size() == 1);
    CHECK(n0.profile_at(1.0).breaks()[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(n1.profile_at(1.0).breaks()[0] == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(n1.fluxes.size() == 2);
    CHECK(n1.fluxes[1].t_frozen == 0.5);
    // The exact characteristic ends at 1 + (1 + 1/2) = 2.5; u_n approaches it as 2.5 - 2^-(n+1).
    for (std::size_t n = 2; n <= 5; ++n) {
      const Solution s = dyadic_solve(one_plus_t_u(), unit_step(1.0), n, 1.0, 1.0);
      CHECK(s.profile_at(1.0).breaks()[0] == doctest::Approx(2.5 - std::ldexp(1.0, -static_cast<int>(n) - 1)));
    }
  }

  TEST_CASE("depth zero with an autonomous flux equals run") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      wft::testing::ProblemShape shape;
      shape.segment = trial % 2 == 1;
      const auto p = wft::testing::random_problem(rng, shape);
      const Solution a = run(p.flux, p.data, p.horizon);
      const Solution b = dyadic_solve(p.flux, p.data, 0, p.horizon);
      REQUIRE(a.epochs.size() == b.epochs.size());
      for (std::size_t i = 0; i < a.epochs.size(); ++i) CHECK(a.epochs[i].fronts == b.epochs[i].fronts);
    }
  }

  TEST_CASE("bound constants") {
    const IbvpData zero_jump{step(kHalf, 0, {{1, 1}}), StepFunction({0, 1}, 0.0), std::nullopt,
                             Domain::half_line()};
    const BoundConstants z = bound_constants(SpaceTimeFlux(), zero_jump, 1.0);
    CHECK(z.L == 1.0);
    CHECK(z.O == 0.0);

    const BoundConstants b = bound_constants(burgers(), zero_jump, 1.0);
    CHECK(b.L == doctest::Approx(2.0));
    CHECK(b.K == 1.0);
    CHECK(b.M == 0.0);
    CHECK(b.O == 0.0);

    const BoundConstants c = bound_constants(one_plus_t_burgers(), zero_jump, 1.0);
    CHECK(c.L == doctest::Approx(3.0));
    CHECK(c.K == 1.0);
    CHECK(c.M == doctest::Approx(1.0));
    CHECK(c.O == doctest::Approx(0.75));
  }

  TEST_CASE("data variation") {
    const IbvpData d{step(kHalf, 0, {{1, 1}}), step({0, 2}, 2, {{1, -1}}), std::nullopt, Domain::half_line()};
    CHECK(data_variation(d, 0.5) == 1.0 + 0.0 + 2.0);
    CHECK(data_variation(d, 1.0) == 1.0 + 3.0 + 2.0);
    const IbvpData s{step({0, 2}, 0, {{1, 1}}), StepFunction({0, 2}, 0.0), StepFunction({0, 2}, -1.0),
                     Domain::segment(2.0)};
    CHECK(data_variation(s, 2.0) == 1.0 + 0.0 + 0.0 + 0.0 + 2.0);
    CHECK(data_variation(grid_exact_data(s, 0.5), 2.0) == data_variation(s, 2.0));
  }

  TEST_CASE("autonomous flux: all Cauchy distances vanish") {
    const GridData data = grid_exact_data(unit_step(1.0), 0.5);
    const auto rows = cauchy_study(burgers(), data, {0, 1, 2}, 1.0, 20);
    REQUIRE(rows.size() == 3);
    for (const CauchyRow& r : rows) {
      CHECK(r.sup_distance == 0.0);
      CHECK(r.bound == 0.0);
      CHECK(std::isnan(r.ratio));
    }
  }

  TEST_CASE("Cauchy rows respect the bound for (1 + t) u^2 / 2") {
    const GridData data = grid_exact_data(
        IbvpData{step(kHalf, 0, {{0.5, 1}, {1.5, 0}}), step({0, 1}, 1, {{0.4, 0.5}}), std::nullopt,
                 Domain::half_line()},
        0.25);
    const auto rows = cauchy_study(one_plus_t_burgers(), data, {0, 1, 2, 3}, 1.0);
    const BoundConstants c = bound_constants(one_plus_t_burgers(), data, 1.0);
    REQUIRE(rows.size() == 4);
    CHECK(!std::isnan(rows[0].ratio));
    CHECK(std::isnan(rows[3].ratio));
    for (const CauchyRow& r : rows) {
      CHECK(r.bound == doctest::Approx(c.O * std::ldexp(1.0, -static_cast<int>(r.depth))));
      CHECK(r.sup_distance <= r.bound);
    }
    CHECK_THROWS_AS(cauchy_study(one_plus_t_burgers(), data, {2, 1}, 1.0), InvalidArgument);
  }

  TEST_CASE("study grid contains every slab endpoint") {
    const auto g = study_grid(1.0, 5, 3);
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
    const SlabSchedule s(3, 1.0);
    for (std::size_t i = 0; i <= 8; ++i) CHECK(std::find(g.begin(), g.end(), s.endpoint(i)) != g.end());
  }

  TEST_CASE("slabs chain and the Glimm functional does not grow across restarts") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
      wft::testing::ProblemShape shape;
      shape.segment = trial % 2 == 0;
      shape.deg_t = 2;
      shape.max_deg_u = 3;
      const auto p = wft::testing::random_problem(rng, shape);
      const std::size_t depth = static_cast<std::size_t>(trial % 4);
      const Solution sol = dyadic_solve(p.flux, p.data, depth, p.horizon);
      const SlabSchedule s(depth, p.horizon);
      REQUIRE(sol.fluxes.size() == s.slabs());
      for (std::size_t i = 0; i < s.slabs(); ++i) {
        CHECK(sol.fluxes[i].t_begin == s.endpoint(i));
        CHECK(sol.fluxes[i].t_end == s.endpoint(i + 1));
        CHECK(sol.fluxes[i].t_frozen == s.frozen_time(i));
      }
      const auto trace = slab_glimm_trace(sol);
      REQUIRE(trace.size() == s.slabs());
      std::int64_t previous = trace.front();
      for (const EventRecord& r : sol.log) {
        CHECK(r.glimm_before <= previous);
        CHECK(r.glimm_after <= r.glimm_before);
        previous = r.glimm_after;
      }
      // Profile continuity at slab endpoints.
      for (std::size_t i = 1; i < s.slabs(); ++i) {
        const double t = s.endpoint(i);
        const StepFunction before = sol.profile_at(std::nextafter(t, 0.0));
        const StepFunction at = sol.profile_at(t);
        CHECK(l1_distance(before, at) <= 1e-9);
      }
    }
  }
}
