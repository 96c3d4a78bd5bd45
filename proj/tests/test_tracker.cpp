#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wft/tracker.hpp"

using namespace wft;
using wft::testing::burgers;
using wft::testing::step;

namespace {

constexpr Interval kHalf{0.0, kInfinity};

struct Setup {
  GridData data;
  PLCFlux plc;
  double horizon;
};

Setup half_line(double eps, StepFunction u_o, StepFunction u_b, double horizon,
                const SpaceTimeFlux& f = burgers()) {
  IbvpData raw{std::move(u_o), std::move(u_b), std::nullopt, Domain::half_line()};
  GridData data = grid_exact_data(raw, eps);
  PLCFlux plc = plc_approximate(f, 0.0, eps, data_hull(data, horizon));
  return {std::move(data), std::move(plc), horizon};
}

Tracker make(const Setup& s) { return Tracker(s.plc, s.data, s.data.initial, 0.0, s.horizon, s.horizon); }

// Mass of the profile on [0, X] with X beyond every front, against the
// boundary flux integrated exactly over the epochs.
void check_mass_balance(const Solution& sol, double X) {
  const double T = sol.horizon;
  const double hi = sol.domain.is_segment() ? sol.domain.length() : X;
  auto mass = [&](const StepFunction& u) {
    double m = 0.0, lo = 0.0;
    for (std::size_t i = 0; i < u.values().size(); ++i) {
      const double b = i < u.breaks().size() ? u.breaks()[i] : hi;
      m += u.values()[i] * (b - lo);
      lo = b;
    }
    return m;
  };
  double inflow = 0.0;
  for (const Epoch& e : sol.epochs) {
    const PLCFlux& p = sol.fluxes.at(e.flux_index).plc;
    const double dt = e.t_end - e.t_begin;
    inflow += dt * p.node(e.leading);
    const std::int64_t right = e.fronts.empty() ? e.leading : e.fronts.back().right;
    if (sol.domain.is_segment()) {
      inflow -= dt * p.node(right);
    } else {
      inflow -= dt * p.node(sol.data.initial.indices().last());
    }
  }
  const double before = mass(sol.profile_at(0.0));
  const double after = mass(sol.profile_at(T));
  CHECK(after - before == doctest::Approx(inflow).epsilon(1e-9).scale(1.0 + std::abs(inflow)));
}

}  // namespace

TEST_SUITE("tracker") {
  TEST_CASE("event kind names round-trip") {
    for (auto k : {EventKind::kInitial, EventKind::kDatumJumpLeft, EventKind::kDatumJumpRight,
                   EventKind::kBoundaryHitLeft, EventKind::kBoundaryHitRight, EventKind::kCollision}) {
      CHECK(event_kind_from_string(to_string(k)) == k);
    }
    CHECK(!event_kind_from_string("nope"));
  }

  TEST_CASE("init: constant data") {
    const Setup s = half_line(0.5, StepFunction(kHalf, 1.0), StepFunction({0, 1}, 1.0), 1.0);
    const Tracker t = make(s);
    CHECK(t.fronts().empty());
    CHECK(t.glimm_units() == 0);
    CHECK(t.sharp_units() == 0);
    CHECK(!t.next_event());
  }

  TEST_CASE("init: single shock") {
    const Setup s = half_line(1.0, step(kHalf, 1, {{1, 0}}), StepFunction({0, 4}, 1.0), 4.0);
    const Tracker t = make(s);
    REQUIRE(t.fronts().size() == 1);
    CHECK(t.fronts()[0] == Front{1.0, 0.0, 0.5, 1, 0});
    CHECK(t.glimm() == 1.0);
    CHECK(t.initial_record().glimm_before == 1);
  }

  TEST_CASE("init: boundary datum above a resting state enters as one shock") {
    const Setup s = half_line(0.5, StepFunction(kHalf, 0.0), StepFunction({0, 1}, 1.0), 1.0);
    const Tracker t = make(s);
    REQUIRE(t.fronts().size() == 1);
    CHECK(t.fronts()[0] == Front{0.0, 0.0, 0.5, 2, 0});
    CHECK(t.glimm() == 1.0);
    CHECK(t.initial_record().glimm_before == 2);
    CHECK(t.leading() == 2);
  }

  TEST_CASE("init: boundary datum below enters as a rarefaction") {
    const Setup s = half_line(0.5, StepFunction(kHalf, 1.0), StepFunction({0, 1}, 0.0), 1.0);
    const Tracker t = make(s);
    REQUIRE(t.fronts().size() == 2);
    CHECK(t.fronts()[0].speed == 0.25);
    CHECK(t.fronts()[1].speed == 0.75);
    CHECK(t.glimm() == 1.0);
  }

  TEST_CASE("next_event examples") {
    {
      const Setup s = half_line(1.0, step(kHalf, 2, {{0.5, 0}, {1.5, -2}}), StepFunction({0, 3}, 2.0), 3.0);
      const Tracker t = make(s);
      REQUIRE(t.fronts().size() == 2);
      CHECK(t.fronts()[0].speed == 1.0);
      CHECK(t.fronts()[1].speed == -1.0);
      const auto e = t.next_event();
      REQUIRE(e);
      CHECK(e->kind == EventKind::kCollision);
      CHECK(e->time == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(e->position == doctest::Approx(1.0).epsilon(1e-14));
    }
    {
      const Setup s = half_line(1.0, step(kHalf, 0, {{1, -4}}), StepFunction({0, 2}, 0.0), 2.0);
      const Tracker t = make(s);
      REQUIRE(t.fronts().size() == 1);
      CHECK(t.fronts()[0].speed == -2.0);
      const auto e = t.next_event();
      REQUIRE(e);
      CHECK(e->kind == EventKind::kBoundaryHitLeft);
      CHECK(e->time == doctest::Approx(0.5).epsilon(1e-14));
    }
    {
      const Setup s = half_line(1.0, StepFunction(kHalf, 0.0), step({0, 1}, 0, {{0.3, 1}}), 1.0);
      const Tracker t = make(s);
      CHECK(t.fronts().empty());
      const auto e = t.next_event();
      REQUIRE(e);
      CHECK(e->kind == EventKind::kDatumJumpLeft);
      CHECK(e->time == 0.3);
      CHECK(e->datum_jump);
    }
  }

  TEST_CASE("apply_event: partial cancellation") {
    const Setup s = half_line(1.0, step(kHalf, 2, {{1, 0}, {2, 1}}), StepFunction({0, 3}, 2.0), 3.0);
    Tracker t = make(s);
    REQUIRE(t.fronts().size() == 2);
    CHECK(t.glimm_units() == 3);
    const auto e = t.next_event();
    REQUIRE(e);
    CHECK(e->time == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e->position == doctest::Approx(3.0).epsilon(1e-14));
    const EventRecord r = t.apply_event(*e);
    REQUIRE(t.fronts().size() == 1);
    CHECK(t.fronts()[0].left == 2);
    CHECK(t.fronts()[0].right == 1);
    CHECK(t.fronts()[0].speed == 1.5);
    CHECK(r.glimm_before == 3);
    CHECK(r.glimm_after == 1);
    CHECK(r.sharp_after < r.sharp_before);
    CHECK(!t.next_event());
  }

  TEST_CASE("apply_event: boundary datum jump converts boundary variation") {
    const Setup s = half_line(1.0, StepFunction(kHalf, 0.0), step({0, 2}, 0, {{0.5, 1}}), 2.0);
    Tracker t = make(s);
    CHECK(t.glimm_units() == 1);
    const auto e = t.next_event();
    REQUIRE(e);
    const EventRecord r = t.apply_event(*e);
    REQUIRE(t.fronts().size() == 1);
    CHECK(t.fronts()[0] == Front{0.0, 0.5, 0.5, 1, 0});
    CHECK(r.glimm_before == 1);
    CHECK(r.glimm_after == 1);
    CHECK(t.datum_left() == 1);
  }

  TEST_CASE("weighted count") {
    const Setup s = half_line(0.5, step(kHalf, -0.5, {{1, -1}}), step({0, 1}, 0, {{0.5, 1}}), 1.0);
    const Tracker t = make(s);
    CHECK(t.fronts().size() == 1);
    CHECK(t.leading() == -1);
    CHECK(t.datum_left() == 0);
    CHECK(t.sharp_units() == 10);

    const Setup three = half_line(1.0, step(kHalf, 0, {{1, 1}, {2, 2}, {3, 3}}), StepFunction({0, 1}, 0.0), 1.0);
    const Tracker t3 = make(three);
    CHECK(t3.fronts().size() == 3);
    CHECK(t3.sharp_units() == 3);
  }

  TEST_CASE("profile_at") {
    const Solution sol = run(burgers(), IbvpData{step(kHalf, 1, {{1, 0}}), StepFunction({0, 4}, 1.0),
                                                 std::nullopt, Domain::half_line()},
                             1.0, 4.0);
    CHECK(sol.profile_at(0.0) == sol.data.initial.values());
    CHECK(sol.profile_at(1.0) == step(kHalf, 1, {{1.5, 0}}));
    for (double t = 0.0; t <= 4.0; t += 0.25) {
      const StepFunction u = sol.profile_at(t);
      REQUIRE(u.breaks().size() == 1);
      CHECK(std::abs(u.breaks()[0] - (1.0 + 0.5 * t)) <= 1e-12);
    }
    CHECK(sol.log.size() == 1);
    CHECK(profile_at(sol, 3.0) == step(kHalf, 1, {{2.5, 0}}));
  }

  TEST_CASE("profile is right-continuous in time at an event") {
    const Setup s = half_line(1.0, step(kHalf, 2, {{1, 0}, {2, 1}}), StepFunction({0, 3}, 2.0), 3.0);
    const Solution sol = run(burgers(), s.data, 3.0);
    REQUIRE(sol.epochs.size() == 2);
    const double te = sol.epochs[1].t_begin;
    CHECK(te == doctest::Approx(2.0));
    CHECK(sol.profile_at(te).values() == std::vector<double>{2.0, 1.0});
    CHECK(sol.profile_at(te - 1e-9).values() == std::vector<double>{2.0, 0.0, 1.0});
  }

  TEST_CASE("constant problem") {
    const Solution sol = run(burgers(), IbvpData{StepFunction(kHalf, 0.5), StepFunction({0, 1}, 0.5),
                                                 std::nullopt, Domain::half_line()},
                             0.5, 1.0);
    CHECK(sol.log.size() == 1);
    for (double t : {0.0, 0.5, 1.0}) CHECK(sol.profile_at(t) == StepFunction(kHalf, 0.5));
    const Solution seg = run(burgers(), IbvpData{StepFunction({0, 2}, 0.5), StepFunction({0, 1}, 0.5),
                                                 StepFunction({0, 1}, 0.5), Domain::segment(2.0)},
                             0.5, 1.0);
    CHECK(seg.log.size() == 1);
    CHECK(seg.epochs.size() == 1);
  }

  TEST_CASE("absorbing boundary") {
    const Solution sol = run(burgers(), IbvpData{StepFunction(kHalf, -1.0), StepFunction({0, 1}, 0.0),
                                                 std::nullopt, Domain::half_line()},
                             1.0, 1.0);
    CHECK(sol.log.size() == 1);
    CHECK(sol.epochs.front().fronts.empty());
    CHECK(sol.profile_at(1.0) == StepFunction(kHalf, -1.0));
  }

  TEST_CASE("input validation") {
    const IbvpData bad{StepFunction(kHalf, 0.0), StepFunction({0, 2}, 0.0), std::nullopt, Domain::half_line()};
    CHECK_THROWS_AS(run(burgers(), bad, 0.5, 1.0), InvalidArgument);
    const IbvpData seg{StepFunction({0, 1}, 0.0), StepFunction({0, 1}, 0.0), std::nullopt, Domain::segment(1.0)};
    CHECK_THROWS_AS(run(burgers(), seg, 0.5, 1.0), InvalidArgument);
    CHECK_THROWS_AS(grid_exact_data({StepFunction(kHalf, 0.3), StepFunction({0, 1}, 0.0), std::nullopt,
                                     Domain::half_line()},
                                    0.5),
                    InvalidArgument);
    Eigen::MatrixXd c(2, 2);
    c << 0, 1, 0, 1;
    const IbvpData ok{StepFunction(kHalf, 0.0), StepFunction({0, 1}, 0.0), std::nullopt, Domain::half_line()};
    CHECK_THROWS_AS(run(SpaceTimeFlux(c), ok, 0.5, 1.0), InvalidArgument);
  }

  TEST_CASE("event fuse") {
    TrackerOptions options;
    options.max_events = 0;
    const Setup s = half_line(1.0, step(kHalf, 2, {{1, 0}, {2, 1}, {3, -1}}), StepFunction({0, 10}, 2.0), 10.0);
    CHECK_THROWS_AS(run(burgers(), s.data, 10.0, options), std::runtime_error);
  }

  TEST_CASE("random problems: Glimm functional, range, mass balance, determinism") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      wft::testing::ProblemShape shape;
      shape.segment = trial % 2 == 1;
      shape.quantized = trial % 3 == 0;
      const auto p = wft::testing::random_problem(rng, shape);
      const Solution sol = wft::testing::solve(p);
      std::int64_t previous = sol.log.front().glimm_before;
      for (const EventRecord& r : sol.log) {
        CHECK(r.glimm_after <= r.glimm_before);
        CHECK(r.glimm_before <= previous);
        previous = r.glimm_after;
      }
      const Interval hull = data_hull(sol.data, sol.horizon);
      for (int i = 0; i <= 20; ++i) {
        const StepFunction u = sol.profile_at(i == 20 ? sol.horizon : sol.horizon * i / 20.0);
        for (double v : u.values()) CHECK(hull.contains(v));
      }
      double reach = 3.0;
      for (const Epoch& e : sol.epochs) {
        for (const Front& f : e.fronts) reach = std::max(reach, f.position(e.t_end) + 1.0);
      }
      check_mass_balance(sol, reach + 1.0);
      const Solution again = wft::testing::solve(p);
      CHECK(again.epochs.size() == sol.epochs.size());
      for (std::size_t i = 0; i < std::min(again.epochs.size(), sol.epochs.size()); ++i) {
        CHECK(again.epochs[i].fronts == sol.epochs[i].fronts);
        CHECK(again.epochs[i].t_begin == sol.epochs[i].t_begin);
      }
    }
  }

  TEST_CASE("epochs tile [0, T] and fronts stay ordered") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
      wft::testing::ProblemShape shape;
      shape.segment = trial % 2 == 0;
      const auto p = wft::testing::random_problem(rng, shape);
      const Solution sol = wft::testing::solve(p);
      REQUIRE(!sol.epochs.empty());
      CHECK(sol.epochs.front().t_begin == 0.0);
      CHECK(sol.epochs.back().t_end == sol.horizon);
      for (std::size_t i = 0; i < sol.epochs.size(); ++i) {
        const Epoch& e = sol.epochs[i];
        CHECK(e.t_begin < e.t_end);
        if (i > 0) CHECK(sol.epochs[i - 1].t_end == e.t_begin);
        std::int64_t state = e.leading;
        for (const Front& f : e.fronts) {
          CHECK(f.left == state);
          state = f.right;
        }
        const double mid = 0.5 * (e.t_begin + e.t_end);
        for (std::size_t j = 1; j < e.fronts.size(); ++j) {
          CHECK(e.fronts[j - 1].position(mid) <= e.fronts[j].position(mid) + 1e-9);
        }
      }
    }
  }
}
