#ifndef WFT_TRACKER_HPP_
#define WFT_TRACKER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wft/flux.hpp"
#include "wft/riemann.hpp"
#include "wft/stepfn.hpp"

namespace wft {

/// A discontinuity moving on a straight line through (anchor_x, anchor_t).
struct Front {
  double anchor_x;
  double anchor_t;
  double speed;
  std::int64_t left;
  std::int64_t right;

  double position(double t) const { return anchor_x + speed * (t - anchor_t); }
  friend bool operator==(const Front&, const Front&) = default;
};

enum class EventKind {
  kInitial,
  kDatumJumpLeft,
  kDatumJumpRight,
  kBoundaryHitLeft,
  kBoundaryHitRight,
  kCollision,
};

std::string to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(const std::string& name);

/// Next interaction of a tracker state. Fronts [first, last) take part; for
/// boundary events the range may be empty (pure datum jump).
struct Event {
  double time;
  EventKind kind;
  double position;
  std::size_t first;
  std::size_t last;
  bool datum_jump = false;  // a boundary datum changes at this event
};

/// One processed event, with the Glimm functional and the weighted front
/// count before and after, both in grid units (multiply by eps).
struct EventRecord {
  double time;
  EventKind kind;
  double position;
  std::vector<Wave> incoming;
  WaveFan outgoing;
  std::int64_t glimm_before;
  std::int64_t glimm_after;
  std::int64_t sharp_before;
  std::int64_t sharp_after;
  std::size_t flux_index;
};

/// Quantized problem data.
struct GridData {
  GridStepFunction initial;        // on the spatial domain
  GridStepFunction boundary_left;  // on [0, T]
  std::optional<GridStepFunction> boundary_right;
  Domain domain;
};

/// Raw problem data.
struct IbvpData {
  StepFunction initial;
  StepFunction boundary_left;
  std::optional<StepFunction> boundary_right;
  Domain domain;
};

/// Checks the shapes of the data against the domain and horizon.
void validate(const IbvpData& data, double horizon);

/// Quantizes initial and boundary data onto eps * Z.
GridData quantize_data(const IbvpData& data, double eps);

/// Data taken as already lying on eps * Z (throws otherwise).
GridData grid_exact_data(const IbvpData& data, double eps);

/// Hull of the initial datum and of the boundary data restricted to [0, t].
Interval data_hull(const IbvpData& data, double t);
Interval data_hull(const GridData& data, double t);

/// PLC flux of u -> f(t_frozen, u) frozen over the time span it drives.
struct FrozenFlux {
  double t_frozen;
  double t_begin;
  double t_end;
  PLCFlux plc;
};

/// Front configuration valid on [t_begin, t_end).
struct Epoch {
  double t_begin;
  double t_end;
  std::int64_t leading;  // state at x = 0+
  std::vector<Front> fronts;
  std::int64_t datum_left;
  std::optional<std::int64_t> datum_right;
  std::size_t flux_index;
};

/// A wave-front-tracking solution: the sequence of front configurations
/// between interaction times, plus the event log.
struct Solution {
  double eps = 0.0;
  double horizon = 0.0;
  Domain domain = Domain::half_line();
  SpaceTimeFlux flux;
  GridData data;
  std::vector<FrozenFlux> fluxes;
  std::vector<Epoch> epochs;
  std::vector<EventRecord> log;
  std::size_t dyadic_depth = 0;

  const Epoch& epoch_at(double t) const;
  BasicStepFunction<std::int64_t> grid_profile_at(double t) const;
  StepFunction profile_at(double t) const;
  const PLCFlux& flux_at(double t) const { return fluxes.at(epoch_at(t).flux_index).plc; }
};

/// Right-continuous profile u^eps(t, .), t in [0, T].
inline StepFunction profile_at(const Solution& solution, double t) { return solution.profile_at(t); }

struct TrackerOptions {
  std::size_t max_events = 2'000'000;
  /// Relative event merging tolerance; scaled by max(1, T).
  double tolerance = 1e-11;
};

/// Live front-tracking state over one time span with a fixed PLC flux.
class Tracker {
 public:
  /// Glues the Riemann fans at every jump of `start` and the boundary fans.
  Tracker(const PLCFlux& flux, const GridData& data, const GridStepFunction& start,
          double t_begin, double t_end, double horizon, TrackerOptions options = {});

  /// Earliest pending event before t_end, or nullopt.
  std::optional<Event> next_event() const;
  /// Processes an event returned by next_event and returns its log record.
  EventRecord apply_event(const Event& event);

  double clock() const { return clock_; }
  const std::vector<Front>& fronts() const { return fronts_; }
  std::int64_t leading() const { return leading_; }
  std::int64_t right_trace() const { return fronts_.empty() ? leading_ : fronts_.back().right; }
  std::int64_t datum_left() const { return datum_left_; }
  std::optional<std::int64_t> datum_right() const { return datum_right_; }

  /// Glimm functional in grid units: TV of the profile, of the remaining
  /// boundary data, and the boundary mismatches.
  std::int64_t glimm_units() const;
  double glimm() const { return static_cast<double>(glimm_units()) * flux_.eps(); }
  /// Weighted number of discontinuities.
  std::int64_t sharp_units() const;

  const EventRecord& initial_record() const { return initial_record_; }
  const PLCFlux& flux() const { return flux_; }

  /// Current profile as a grid step function.
  BasicStepFunction<std::int64_t> grid_profile() const;

 private:
  struct Jump {
    double time;
    std::int64_t value;
  };

  void check_invariants() const;
  double space_tolerance() const;
  std::int64_t future_tv(const std::vector<Jump>& jumps, std::size_t next, std::int64_t current) const;

  PLCFlux flux_;
  Domain domain_;
  double t_end_;
  double tolerance_;
  double clock_;
  std::int64_t leading_;
  std::vector<Front> fronts_;
  std::int64_t datum_left_;
  std::optional<std::int64_t> datum_right_;
  std::vector<Jump> jumps_left_;
  std::vector<Jump> jumps_right_;
  std::size_t next_left_ = 0;
  std::size_t next_right_ = 0;
  std::int64_t hull_lo_;
  std::int64_t hull_hi_;
  std::int64_t jump_weight_;
  EventRecord initial_record_;
};

/// Runs a tracker over [t_begin, t_end] and appends epochs and log records to
/// `solution` (whose fluxes[flux_index] must be `flux`). Returns the final
/// profile at t_end.
GridStepFunction track_span(Solution& solution, std::size_t flux_index,
                            const GridStepFunction& start, double t_begin, double t_end,
                            const TrackerOptions& options = {});

/// Wave-front-tracking solution of the autonomous IBVP. A time-dependent flux
/// is rejected; use dyadic_solve for those.
Solution run(const SpaceTimeFlux& flux, const GridData& data, double horizon,
             const TrackerOptions& options = {});
Solution run(const SpaceTimeFlux& flux, const IbvpData& data, double eps, double horizon,
             const TrackerOptions& options = {});

/// Current grid units of a state, as a real value.
inline double state_value(std::int64_t k, double eps) { return static_cast<double>(k) * eps; }

}  // namespace wft

#endif  // WFT_TRACKER_HPP_
