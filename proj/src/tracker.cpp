#include "wft/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wft {

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kInitial: return "initial";
    case EventKind::kDatumJumpLeft: return "boundary_datum_jump_left";
    case EventKind::kDatumJumpRight: return "boundary_datum_jump_right";
    case EventKind::kBoundaryHitLeft: return "boundary_hit_left";
    case EventKind::kBoundaryHitRight: return "boundary_hit_right";
    case EventKind::kCollision: return "collision";
  }
  return "unknown";
}

std::optional<EventKind> event_kind_from_string(const std::string& name) {
  for (auto kind : {EventKind::kInitial, EventKind::kDatumJumpLeft, EventKind::kDatumJumpRight,
                    EventKind::kBoundaryHitLeft, EventKind::kBoundaryHitRight,
                    EventKind::kCollision}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Data

void validate(const IbvpData& data, double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("horizon must be positive");
  if (!(data.initial.domain() == data.domain.interval())) {
    throw InvalidArgument("initial datum must be defined on the spatial domain");
  }
  const Interval time{0.0, horizon};
  if (!(data.boundary_left.domain() == time)) {
    throw InvalidArgument("boundary datum must be defined on [0, T]");
  }
  if (data.domain.is_segment() != data.boundary_right.has_value()) {
    throw InvalidArgument("a right boundary datum is required on a segment and only there");
  }
  if (data.boundary_right && !(data.boundary_right->domain() == time)) {
    throw InvalidArgument("right boundary datum must be defined on [0, T]");
  }
}

GridData quantize_data(const IbvpData& data, double eps) {
  GridStepFunction initial = quantize(data.initial, eps);
  const StepFunction q0 = initial.values();
  GridStepFunction left = quantize_boundary(data.boundary_left, eps, data.initial.first(), q0.first());
  std::optional<GridStepFunction> right;
  if (data.boundary_right) {
    right = quantize_boundary(*data.boundary_right, eps, data.initial.last(), q0.last());
  }
  return GridData{std::move(initial), std::move(left), std::move(right), data.domain};
}

namespace {

BasicStepFunction<std::int64_t> to_grid(const StepFunction& u, double eps) {
  std::vector<std::int64_t> k;
  k.reserve(u.values().size());
  for (double v : u.values()) k.push_back(grid_index(v, eps));
  return BasicStepFunction<std::int64_t>(u.domain(), u.breaks(), std::move(k));
}

}  // namespace

GridData grid_exact_data(const IbvpData& data, double eps) {
  std::optional<GridStepFunction> right;
  if (data.boundary_right) right = GridStepFunction(to_grid(*data.boundary_right, eps), eps);
  return GridData{GridStepFunction(to_grid(data.initial, eps), eps),
                  GridStepFunction(to_grid(data.boundary_left, eps), eps), std::move(right),
                  data.domain};
}

Interval data_hull(const IbvpData& data, double t) {
  std::vector<std::pair<StepFunction, Interval>> parts{
      {data.initial, data.initial.domain()}, {data.boundary_left, {0.0, t}}};
  if (data.boundary_right) parts.emplace_back(*data.boundary_right, Interval{0.0, t});
  return range_hull(parts);
}

Interval data_hull(const GridData& data, double t) {
  std::vector<std::pair<StepFunction, Interval>> parts{
      {data.initial.values(), data.initial.domain()}, {data.boundary_left.values(), {0.0, t}}};
  if (data.boundary_right) parts.emplace_back(data.boundary_right->values(), Interval{0.0, t});
  return range_hull(parts);
}

// ---------------------------------------------------------------------------
// Solution

const Epoch& Solution::epoch_at(double t) const {
  if (epochs.empty()) throw InvalidArgument("solution has no epochs");
  if (!(t >= 0.0 && t <= horizon)) throw InvalidArgument("time outside [0, T]");
  auto it = std::upper_bound(epochs.begin(), epochs.end(), t,
                             [](double value, const Epoch& e) { return value < e.t_begin; });
  if (it == epochs.begin()) return epochs.front();
  return *(it - 1);
}

namespace {

BasicStepFunction<std::int64_t> epoch_profile(const Epoch& epoch, const Domain& domain, double t) {
  std::vector<double> breaks;
  std::vector<std::int64_t> values{epoch.leading};
  breaks.reserve(epoch.fronts.size());
  double prev = domain.interval().lo;
  for (const Front& f : epoch.fronts) {
    prev = std::max(prev, f.position(t));
    breaks.push_back(std::min(prev, domain.length()));
    values.push_back(f.right);
  }
  return BasicStepFunction<std::int64_t>(domain.interval(), std::move(breaks), std::move(values));
}

}  // namespace

BasicStepFunction<std::int64_t> Solution::grid_profile_at(double t) const {
  return epoch_profile(epoch_at(t), domain, t);
}

StepFunction Solution::profile_at(double t) const {
  return GridStepFunction(grid_profile_at(t), eps).values();
}

// ---------------------------------------------------------------------------
// Tracker

Tracker::Tracker(const PLCFlux& flux, const GridData& data, const GridStepFunction& start,
                 double t_begin, double t_end, double horizon, TrackerOptions options)
    : flux_(flux),
      domain_(data.domain),
      t_end_(t_end),
      tolerance_(options.tolerance * std::max(1.0, horizon)),
      clock_(t_begin),
      leading_(start.indices().first()),
      datum_left_(data.boundary_left.index_at(t_begin)) {
  if (start.eps() != flux.eps() || data.initial.eps() != flux.eps()) {
    throw InvalidArgument("data and flux use different grid spacings");
  }
  if (!(start.domain() == domain_.interval())) {
    throw InvalidArgument("start profile must live on the spatial domain");
  }
  if (!(t_begin < t_end) || t_end > horizon * (1.0 + 1e-15)) {
    throw InvalidArgument("tracker span must satisfy t_begin < t_end <= T");
  }

  // Hull of all data over [0, T] in grid units.
  hull_lo_ = std::numeric_limits<std::int64_t>::max();
  hull_hi_ = std::numeric_limits<std::int64_t>::min();
  auto widen = [&](const BasicStepFunction<std::int64_t>& g) {
    for (auto k : g.values()) {
      hull_lo_ = std::min(hull_lo_, k);
      hull_hi_ = std::max(hull_hi_, k);
    }
  };
  widen(data.initial.indices());
  widen(data.boundary_left.indices());
  if (data.boundary_right) widen(data.boundary_right->indices());
  for (auto k : start.indices().values()) {
    if (k < hull_lo_ || k > hull_hi_) throw InvalidArgument("start profile leaves the data hull");
  }
  if (!flux_.contains(hull_lo_) || !flux_.contains(hull_hi_)) {
    throw InvalidArgument("flux node range does not cover the data hull");
  }

  auto schedule = [&](const GridStepFunction& g) {
    std::vector<Jump> jumps;
    const auto& b = g.indices().breaks();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] > t_begin && b[i] < horizon) jumps.push_back({b[i], g.indices().values()[i + 1]});
    }
    return jumps;
  };
  jumps_left_ = schedule(data.boundary_left);
  std::int64_t boundary_sup = data.boundary_left.sup_units();
  if (data.boundary_right) {
    if (!domain_.is_segment()) throw InvalidArgument("right boundary datum on the half-line");
    jumps_right_ = schedule(*data.boundary_right);
    datum_right_ = data.boundary_right->index_at(t_begin);
    boundary_sup = std::max(boundary_sup, data.boundary_right->sup_units());
  } else if (domain_.is_segment()) {
    throw InvalidArgument("segment requires a right boundary datum");
  }
  jump_weight_ = 2 * (boundary_sup + data.initial.sup_units());

  // Glimm functional and weighted count of the raw data, before any
  // Riemann problem is solved.
  const auto& sb = start.indices().breaks();
  const auto& sv = start.indices().values();
  std::int64_t raw_tv = 0;
  for (std::size_t i = 0; i < sb.size(); ++i) raw_tv += std::abs(sv[i + 1] - sv[i]);
  std::int64_t glimm_raw = raw_tv + future_tv(jumps_left_, 0, datum_left_) + std::abs(datum_left_ - sv.front());
  std::int64_t sharp_raw = static_cast<std::int64_t>(sb.size()) +
                           jump_weight_ * static_cast<std::int64_t>(jumps_left_.size() + jumps_right_.size()) +
                           std::abs(datum_left_ - sv.front());
  if (datum_right_) {
    glimm_raw += future_tv(jumps_right_, 0, *datum_right_) + std::abs(*datum_right_ - sv.back());
    sharp_raw += std::abs(*datum_right_ - sv.back());
  }

  std::vector<Wave> incoming;
  WaveFan outgoing;
  auto emit = [&](const WaveFan& fan, double x) {
    for (const Wave& w : fan) {
      fronts_.push_back({x, t_begin, w.speed, w.left, w.right});
      outgoing.push_back(w);
    }
  };
  const WaveFan left_fan = solve_boundary_left(flux_, datum_left_, sv.front());
  emit(left_fan, 0.0);
  for (std::size_t i = 0; i < sb.size(); ++i) {
    incoming.push_back({sv[i], sv[i + 1], 0.0});
    emit(solve_riemann(flux_, sv[i], sv[i + 1]), sb[i]);
  }
  if (datum_right_) emit(solve_boundary_right(flux_, sv.back(), *datum_right_), domain_.length());
  leading_ = left_fan.empty() ? sv.front() : left_fan.front().left;

  initial_record_ = EventRecord{t_begin, EventKind::kInitial, 0.0, std::move(incoming), std::move(outgoing),
                                glimm_raw, glimm_units(), sharp_raw, sharp_units(), 0};
  check_invariants();
}

std::int64_t Tracker::future_tv(const std::vector<Jump>& jumps, std::size_t next,
                                std::int64_t current) const {
  std::int64_t sum = 0;
  for (std::size_t i = next; i < jumps.size(); ++i) {
    sum += std::abs(jumps[i].value - current);
    current = jumps[i].value;
  }
  return sum;
}

std::int64_t Tracker::glimm_units() const {
  std::int64_t v = 0;
  for (const Front& f : fronts_) v += std::abs(f.right - f.left);
  v += future_tv(jumps_left_, next_left_, datum_left_) + std::abs(datum_left_ - leading_);
  if (datum_right_) {
    v += future_tv(jumps_right_, next_right_, *datum_right_) + std::abs(*datum_right_ - right_trace());
  }
  return v;
}

std::int64_t Tracker::sharp_units() const {
  const auto pending = static_cast<std::int64_t>((jumps_left_.size() - next_left_) +
                                                 (jumps_right_.size() - next_right_));
  std::int64_t s = static_cast<std::int64_t>(fronts_.size()) + jump_weight_ * pending +
                   std::abs(datum_left_ - leading_);
  if (datum_right_) s += std::abs(*datum_right_ - right_trace());
  return s;
}

double Tracker::space_tolerance() const {
  double max_speed = 1.0;
  for (const Front& f : fronts_) max_speed = std::max(max_speed, std::abs(f.speed));
  return tolerance_ * max_speed;
}

std::optional<Event> Tracker::next_event() const {
  const double now = clock_;
  const std::size_t n = fronts_.size();
  std::vector<double> pair_time(n > 0 ? n - 1 : 0, kInfinity);
  double best = kInfinity;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Front& a = fronts_[i];
    const Front& b = fronts_[i + 1];
    if (a.speed > b.speed) {
      const double gap = std::max(0.0, b.position(now) - a.position(now));
      pair_time[i] = now + gap / (a.speed - b.speed);
      best = std::min(best, pair_time[i]);
    }
  }
  double left_hit = kInfinity;
  if (n > 0 && fronts_.front().speed < 0.0) {
    left_hit = now + std::max(0.0, fronts_.front().position(now)) / -fronts_.front().speed;
  }
  double right_hit = kInfinity;
  if (domain_.is_segment() && n > 0 && fronts_.back().speed > 0.0) {
    right_hit = now + std::max(0.0, domain_.length() - fronts_.back().position(now)) / fronts_.back().speed;
  }
  const double jump_left = next_left_ < jumps_left_.size() ? jumps_left_[next_left_].time : kInfinity;
  const double jump_right = next_right_ < jumps_right_.size() ? jumps_right_[next_right_].time : kInfinity;
  best = std::min({best, left_hit, right_hit, jump_left, jump_right});
  if (!(best < t_end_ - tolerance_)) return std::nullopt;

  const double te = std::max(best, now);
  const double limit = best + tolerance_;
  const double tx = space_tolerance();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = fronts_[i].position(te);

  // Collision clusters: runs of adjacent colliding pairs, then runs that
  // touch in space.
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (pair_time[i] > limit) continue;
    if (!clusters.empty() && clusters.back().second == i + 1) {
      clusters.back().second = i + 2;
    } else if (!clusters.empty() && x[i] - x[clusters.back().second - 1] <= tx) {
      clusters.back().second = i + 2;
    } else {
      clusters.emplace_back(i, i + 2);
    }
  }

  std::vector<Event> candidates;
  const bool left_event = left_hit <= limit || jump_left <= limit;
  std::size_t left_end = 0;
  if (left_event) {
    while (left_end < n && x[left_end] <= tx) ++left_end;
    if (left_hit <= limit) left_end = std::max<std::size_t>(left_end, 1);
  }
  const bool right_event = right_hit <= limit || jump_right <= limit;
  std::size_t right_begin = n;
  if (right_event) {
    const double L = domain_.length();
    while (right_begin > left_end && x[right_begin - 1] >= L - tx) --right_begin;
    if (right_hit <= limit) right_begin = std::min(right_begin, n - 1);
    right_begin = std::max(right_begin, left_end);
  }
  for (const auto& [first, last] : clusters) {
    if (left_event && x[first] <= tx) {
      left_end = std::max(left_end, last);
      continue;
    }
    if (right_event && x[last - 1] >= domain_.length() - tx) {
      right_begin = std::min(right_begin, first);
      continue;
    }
    double mean = 0.0;
    for (std::size_t i = first; i < last; ++i) mean += x[i];
    mean /= static_cast<double>(last - first);
    candidates.push_back({te, EventKind::kCollision, mean, first, last, false});
  }
  if (left_event) {
    const bool jump = jump_left <= limit;
    candidates.push_back({te, jump ? EventKind::kDatumJumpLeft : EventKind::kBoundaryHitLeft, 0.0, 0,
                          left_end, jump});
  }
  if (right_event) {
    const bool jump = jump_right <= limit;
    candidates.push_back({te, jump ? EventKind::kDatumJumpRight : EventKind::kBoundaryHitRight,
                          domain_.length(), std::max(right_begin, left_event ? left_end : 0), n, jump});
  }
  // A collision swallowed by a boundary group after it was emitted.
  std::erase_if(candidates, [&](const Event& e) {
    return e.kind == EventKind::kCollision &&
           ((left_event && e.first < left_end) || (right_event && e.last > right_begin));
  });
  if (candidates.empty()) return std::nullopt;

  auto priority = [](EventKind k) {
    switch (k) {
      case EventKind::kDatumJumpLeft:
      case EventKind::kDatumJumpRight: return 0;
      case EventKind::kBoundaryHitLeft:
      case EventKind::kBoundaryHitRight: return 1;
      default: return 2;
    }
  };
  return *std::min_element(candidates.begin(), candidates.end(), [&](const Event& a, const Event& b) {
    if (priority(a.kind) != priority(b.kind)) return priority(a.kind) < priority(b.kind);
    return a.position < b.position;
  });
}

EventRecord Tracker::apply_event(const Event& event) {
  clock_ = std::max(clock_, event.time);
  const double t = clock_;
  EventRecord record{t, event.kind, event.position, {}, {}, glimm_units(), 0, sharp_units(), 0, 0};
  if (event.last > fronts_.size() || event.first > event.last) {
    throw InternalError("apply_event: front range out of bounds");
  }
  for (std::size_t i = event.first; i < event.last; ++i) {
    record.incoming.push_back({fronts_[i].left, fronts_[i].right, fronts_[i].speed});
  }

  auto make_fronts = [&](const WaveFan& fan, double x) {
    std::vector<Front> out;
    out.reserve(fan.size());
    for (const Wave& w : fan) out.push_back({x, t, w.speed, w.left, w.right});
    return out;
  };
  const auto first = static_cast<std::ptrdiff_t>(event.first);
  const auto last = static_cast<std::ptrdiff_t>(event.last);

  switch (event.kind) {
    case EventKind::kCollision: {
      if (event.last - event.first < 2) throw InternalError("collision needs two fronts");
      const std::int64_t left = fronts_[event.first].left;
      const std::int64_t right = fronts_[event.last - 1].right;
      record.outgoing = solve_riemann(flux_, left, right);
      const auto fresh = make_fronts(record.outgoing, event.position);
      fronts_.erase(fronts_.begin() + first, fronts_.begin() + last);
      fronts_.insert(fronts_.begin() + first, fresh.begin(), fresh.end());
      if (event.first == 0) leading_ = fresh.empty() ? right : fresh.front().left;
      break;
    }
    case EventKind::kDatumJumpLeft:
    case EventKind::kBoundaryHitLeft: {
      if (event.first != 0) throw InternalError("left boundary event must start at the first front");
      const std::int64_t trace = event.last > 0 ? fronts_[event.last - 1].right : leading_;
      if (event.datum_jump) datum_left_ = jumps_left_.at(next_left_++).value;
      record.outgoing = solve_boundary_left(flux_, datum_left_, trace);
      const auto fresh = make_fronts(record.outgoing, 0.0);
      fronts_.erase(fronts_.begin(), fronts_.begin() + last);
      fronts_.insert(fronts_.begin(), fresh.begin(), fresh.end());
      leading_ = fresh.empty() ? trace : fresh.front().left;
      break;
    }
    case EventKind::kDatumJumpRight:
    case EventKind::kBoundaryHitRight: {
      if (event.last != fronts_.size()) throw InternalError("right boundary event must end at the last front");
      const std::int64_t trace = event.first < event.last ? fronts_[event.first].left : right_trace();
      if (event.datum_jump) datum_right_ = jumps_right_.at(next_right_++).value;
      record.outgoing = solve_boundary_right(flux_, trace, *datum_right_);
      const auto fresh = make_fronts(record.outgoing, domain_.length());
      fronts_.erase(fronts_.begin() + first, fronts_.end());
      fronts_.insert(fronts_.end(), fresh.begin(), fresh.end());
      if (event.first == 0) leading_ = fresh.empty() ? trace : fresh.front().left;
      break;
    }
    case EventKind::kInitial:
      throw InternalError("apply_event: initial gluing is not an event");
  }

  record.glimm_after = glimm_units();
  record.sharp_after = sharp_units();
  check_invariants();
  return record;
}

void Tracker::check_invariants() const {
  const double tx = 1e3 * space_tolerance();
  std::int64_t state = leading_;
  double prev_x = -kInfinity;
  for (std::size_t i = 0; i < fronts_.size(); ++i) {
    const Front& f = fronts_[i];
    if (f.left != state) throw InternalError("front states do not chain");
    if (f.left == f.right) throw InternalError("zero-strength front");
    if (f.right < hull_lo_ || f.right > hull_hi_) throw InternalError("state outside the data hull");
    const double x = f.position(clock_);
    if (x < prev_x - tx) {
      std::ostringstream os;
      os << "fronts out of order at t=" << clock_ << " index " << i;
      throw InternalError(os.str());
    }
    if (x < -tx || x > domain_.length() + tx) throw InternalError("front outside the domain");
    prev_x = x;
    state = f.right;
  }
  if (leading_ < hull_lo_ || leading_ > hull_hi_) throw InternalError("state outside the data hull");
}

BasicStepFunction<std::int64_t> Tracker::grid_profile() const {
  Epoch e{clock_, clock_, leading_, fronts_, datum_left_, datum_right_, 0};
  return epoch_profile(e, domain_, clock_);
}

// ---------------------------------------------------------------------------
// Driving a tracker

GridStepFunction track_span(Solution& solution, std::size_t flux_index, const GridStepFunction& start,
                            double t_begin, double t_end, const TrackerOptions& options) {
  const PLCFlux& flux = solution.fluxes.at(flux_index).plc;
  Tracker tracker(flux, solution.data, start, t_begin, t_end, solution.horizon, options);
  EventRecord init = tracker.initial_record();
  init.flux_index = flux_index;
  solution.log.push_back(std::move(init));

  auto snapshot = [&](double t) {
    return Epoch{t, t_end, tracker.leading(), tracker.fronts(), tracker.datum_left(), tracker.datum_right(),
                 flux_index};
  };
  if (!solution.epochs.empty()) solution.epochs.back().t_end = t_begin;
  solution.epochs.push_back(snapshot(t_begin));

  std::size_t count = 0;
  while (auto event = tracker.next_event()) {
    if (++count > options.max_events) {
      std::ostringstream os;
      os << "event fuse exceeded: " << options.max_events << " events by t=" << tracker.clock()
         << " with " << tracker.fronts().size() << " fronts";
      throw std::runtime_error(os.str());
    }
    EventRecord record = tracker.apply_event(*event);
    record.flux_index = flux_index;
    solution.log.push_back(std::move(record));
    Epoch& current = solution.epochs.back();
    if (current.t_begin == tracker.clock()) {
      current = snapshot(tracker.clock());
    } else {
      current.t_end = tracker.clock();
      solution.epochs.push_back(snapshot(tracker.clock()));
    }
  }
  solution.epochs.back().t_end = t_end;
  return GridStepFunction(epoch_profile(solution.epochs.back(), solution.domain, t_end), solution.eps);
}

Solution run(const SpaceTimeFlux& flux, const GridData& data, double horizon, const TrackerOptions& options) {
  if (!flux.is_autonomous()) {
    throw InvalidArgument("run: time-dependent flux, use dyadic_solve");
  }
  Solution solution;
  solution.eps = data.initial.eps();
  solution.horizon = horizon;
  solution.domain = data.domain;
  solution.flux = flux;
  solution.data = data;
  const Interval hull = data_hull(data, horizon);
  solution.fluxes.push_back({0.0, 0.0, horizon, plc_approximate(flux, 0.0, solution.eps, hull)});
  track_span(solution, 0, data.initial, 0.0, horizon, options);
  return solution;
}

Solution run(const SpaceTimeFlux& flux, const IbvpData& data, double eps, double horizon,
             const TrackerOptions& options) {
  validate(data, horizon);
  return run(flux, quantize_data(data, eps), horizon, options);
}

}  // namespace wft
