#include "wft/flux.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

namespace wft {

SpaceTimeFlux::SpaceTimeFlux() : coefficients_(Eigen::MatrixXd::Zero(1, 1)) {}

SpaceTimeFlux::SpaceTimeFlux(Eigen::MatrixXd coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() == 0) coefficients_ = Eigen::MatrixXd::Zero(1, 1);
  if (!coefficients_.allFinite()) {
    throw InvalidArgument("flux coefficients must be finite");
  }
  trim();
}

SpaceTimeFlux SpaceTimeFlux::in_u(const std::vector<double>& coefficients) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(1, std::max<Eigen::Index>(1, coefficients.size()));
  for (std::size_t k = 0; k < coefficients.size(); ++k) c(0, k) = coefficients[k];
  return SpaceTimeFlux(std::move(c));
}

void SpaceTimeFlux::trim() {
  Eigen::Index rows = coefficients_.rows();
  while (rows > 1 && coefficients_.row(rows - 1).isZero(0.0)) --rows;
  Eigen::Index cols = coefficients_.cols();
  while (cols > 1 && coefficients_.col(cols - 1).head(rows).isZero(0.0)) --cols;
  if (rows != coefficients_.rows() || cols != coefficients_.cols()) {
    Eigen::MatrixXd kept = coefficients_.topLeftCorner(rows, cols);
    coefficients_ = std::move(kept);
  }
}

double SpaceTimeFlux::operator()(double t, double u) const {
  double acc = 0.0;
  for (Eigen::Index j = coefficients_.rows() - 1; j >= 0; --j) {
    double inner = 0.0;
    for (Eigen::Index k = coefficients_.cols() - 1; k >= 0; --k) {
      inner = inner * u + coefficients_(j, k);
    }
    acc = acc * t + inner;
  }
  return acc;
}

SpaceTimeFlux SpaceTimeFlux::du() const {
  if (coefficients_.cols() == 1) return SpaceTimeFlux();
  Eigen::MatrixXd d(coefficients_.rows(), coefficients_.cols() - 1);
  for (Eigen::Index k = 1; k < coefficients_.cols(); ++k) {
    d.col(k - 1) = static_cast<double>(k) * coefficients_.col(k);
  }
  return SpaceTimeFlux(std::move(d));
}

SpaceTimeFlux SpaceTimeFlux::dt() const {
  if (coefficients_.rows() == 1) return SpaceTimeFlux();
  Eigen::MatrixXd d(coefficients_.rows() - 1, coefficients_.cols());
  for (Eigen::Index j = 1; j < coefficients_.rows(); ++j) {
    d.row(j - 1) = static_cast<double>(j) * coefficients_.row(j);
  }
  return SpaceTimeFlux(std::move(d));
}

SpaceTimeFlux SpaceTimeFlux::frozen_at(double t) const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(1, coefficients_.cols());
  for (Eigen::Index j = coefficients_.rows() - 1; j >= 0; --j) {
    c.row(0) = c.row(0) * t + coefficients_.row(j);
  }
  return SpaceTimeFlux(std::move(c));
}

namespace {

Eigen::MatrixXd padded(const Eigen::MatrixXd& m, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

}  // namespace

SpaceTimeFlux operator+(const SpaceTimeFlux& a, const SpaceTimeFlux& b) {
  const Eigen::Index rows = std::max(a.coefficients_.rows(), b.coefficients_.rows());
  const Eigen::Index cols = std::max(a.coefficients_.cols(), b.coefficients_.cols());
  return SpaceTimeFlux(padded(a.coefficients_, rows, cols) + padded(b.coefficients_, rows, cols));
}

SpaceTimeFlux operator-(const SpaceTimeFlux& a, const SpaceTimeFlux& b) {
  return a + (-1.0) * b;
}

SpaceTimeFlux operator*(double s, const SpaceTimeFlux& a) {
  return SpaceTimeFlux(s * a.coefficients_);
}

// ---------------------------------------------------------------------------
// sup |p| over a box

namespace {

struct Enclosure {
  double lo;
  double hi;
};

Enclosure operator+(Enclosure a, Enclosure b) { return {a.lo + b.lo, a.hi + b.hi}; }

Enclosure operator*(Enclosure a, Enclosure b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Enclosure horner(const Eigen::MatrixXd& c, Enclosure t, Enclosure u) {
  Enclosure acc{0.0, 0.0};
  for (Eigen::Index j = c.rows() - 1; j >= 0; --j) {
    Enclosure inner{0.0, 0.0};
    for (Eigen::Index k = c.cols() - 1; k >= 0; --k) {
      inner = inner * u + Enclosure{c(j, k), c(j, k)};
    }
    acc = acc * t + inner;
  }
  return acc;
}

struct Box {
  Interval t;
  Interval u;
  double upper;
  bool operator<(const Box& other) const { return upper < other.upper; }
};

}  // namespace

double sup_abs(const SpaceTimeFlux& p, const Interval& t_box, const Interval& u_box) {
  if (t_box.empty() || u_box.empty() || !t_box.bounded() || !u_box.bounded()) {
    throw InvalidArgument("sup_abs: box must be nonempty and bounded");
  }
  if (p.is_zero()) return 0.0;

  const SpaceTimeFlux pt = p.dt();
  const SpaceTimeFlux pu = p.du();

  double best = 0.0;
  auto sample = [&](double t, double u) { best = std::max(best, std::abs(p(t, u))); };

  // Upper bound of |p| on a box: the intersection of the natural Horner
  // enclosure with the mean-value form around the box centre.
  auto enclose = [&](const Interval& tb, const Interval& ub) {
    const Enclosure te{tb.lo, tb.hi};
    const Enclosure ue{ub.lo, ub.hi};
    const Enclosure natural = horner(p.coefficients(), te, ue);
    const double tc = 0.5 * (tb.lo + tb.hi);
    const double uc = 0.5 * (ub.lo + ub.hi);
    const double ht = 0.5 * (tb.hi - tb.lo);
    const double hu = 0.5 * (ub.hi - ub.lo);
    const Enclosure gt = horner(pt.coefficients(), te, ue);
    const Enclosure gu = horner(pu.coefficients(), te, ue);
    const double centre = p(tc, uc);
    const double spread = std::max(std::abs(gt.lo), std::abs(gt.hi)) * ht +
                          std::max(std::abs(gu.lo), std::abs(gu.hi)) * hu;
    const double lo = std::max(natural.lo, centre - spread);
    const double hi = std::min(natural.hi, centre + spread);
    return std::max(std::abs(lo), std::abs(hi));
  };

  sample(t_box.lo, u_box.lo);
  sample(t_box.lo, u_box.hi);
  sample(t_box.hi, u_box.lo);
  sample(t_box.hi, u_box.hi);

  const double t_scale = std::max(t_box.length(), 1e-300);
  const double u_scale = std::max(u_box.length(), 1e-300);

  std::priority_queue<Box> open;
  open.push({t_box, u_box, enclose(t_box, u_box)});
  double certified = best;
  constexpr int kMaxBoxes = 200000;
  int processed = 0;
  while (!open.empty()) {
    Box box = open.top();
    open.pop();
    const double tol = 1e-12 * std::max(best, 1e-300);
    if (box.upper <= best + tol || ++processed > kMaxBoxes) {
      certified = std::max(certified, box.upper);
      // Every remaining box has an enclosure no larger than this one.
      break;
    }
    sample(0.5 * (box.t.lo + box.t.hi), 0.5 * (box.u.lo + box.u.hi));
    const bool split_t = box.t.length() / t_scale > box.u.length() / u_scale;
    if (split_t) {
      const double mid = 0.5 * (box.t.lo + box.t.hi);
      if (!(box.t.lo < mid && mid < box.t.hi)) {
        certified = std::max(certified, box.upper);
        continue;
      }
      sample(mid, box.u.lo);
      sample(mid, box.u.hi);
      const Interval left{box.t.lo, mid}, right{mid, box.t.hi};
      open.push({left, box.u, std::min(box.upper, enclose(left, box.u))});
      open.push({right, box.u, std::min(box.upper, enclose(right, box.u))});
    } else {
      const double mid = 0.5 * (box.u.lo + box.u.hi);
      if (!(box.u.lo < mid && mid < box.u.hi)) {
        certified = std::max(certified, box.upper);
        continue;
      }
      sample(box.t.lo, mid);
      sample(box.t.hi, mid);
      const Interval left{box.u.lo, mid}, right{mid, box.u.hi};
      open.push({box.t, left, std::min(box.upper, enclose(box.t, left))});
      open.push({box.t, right, std::min(box.upper, enclose(box.t, right))});
    }
  }
  return std::max(best, certified);
}

// ---------------------------------------------------------------------------
// PLC interpolant

PLCFlux::PLCFlux(double eps, std::int64_t k_min, std::vector<double> nodes)
    : eps_(eps), k_min_(k_min), nodes_(std::move(nodes)) {
  if (!(eps_ > 0.0)) throw InvalidArgument("PLCFlux: eps must be positive");
  if (nodes_.empty()) throw InvalidArgument("PLCFlux: empty node range");
  slopes_.resize(nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    slopes_[i] = (nodes_[i + 1] - nodes_[i]) / eps_;
  }
}

double PLCFlux::node(std::int64_t k) const {
  if (!contains(k)) throw InvalidArgument("PLCFlux: state index outside node range");
  return nodes_[static_cast<std::size_t>(k - k_min_)];
}

double PLCFlux::slope(std::int64_t k) const {
  if (k < k_min_ || k >= k_max()) throw InvalidArgument("PLCFlux: cell outside node range");
  return slopes_[static_cast<std::size_t>(k - k_min_)];
}

double PLCFlux::operator()(double u) const {
  const double s = u / eps_;
  auto k = static_cast<std::int64_t>(std::floor(s));
  if (k < k_min_ || k > k_max()) throw InvalidArgument("PLCFlux: state outside node range");
  if (k == k_max()) {
    if (s != static_cast<double>(k)) throw InvalidArgument("PLCFlux: state outside node range");
    return node(k);
  }
  const double theta = s - static_cast<double>(k);
  if (theta == 0.0) return node(k);
  return node(k) + slope(k) * theta * eps_;
}

double PLCFlux::extended(double u) const {
  const double lo = static_cast<double>(k_min_) * eps_;
  const double hi = static_cast<double>(k_max()) * eps_;
  if (u < lo) return node(k_min_) + (slopes_.empty() ? 0.0 : slopes_.front()) * (u - lo);
  if (u > hi) return node(k_max()) + (slopes_.empty() ? 0.0 : slopes_.back()) * (u - hi);
  if (u == hi) return node(k_max());
  return (*this)(u);
}

double PLCFlux::speed(std::int64_t a, std::int64_t b) const {
  if (a == b) throw InvalidArgument("PLCFlux::speed: equal states");
  return (node(b) - node(a)) / (static_cast<double>(b - a) * eps_);
}

double PLCFlux::max_abs_slope(std::int64_t lo, std::int64_t hi) const {
  double m = 0.0;
  for (std::int64_t k = std::max(lo, k_min_); k < std::min(hi, k_max()); ++k) {
    m = std::max(m, std::abs(slope(k)));
  }
  return m;
}

PLCFlux plc_approximate(const SpaceTimeFlux& f, double t_frozen, double eps,
                        const Interval& hull) {
  if (!(eps > 0.0)) throw InvalidArgument("plc_approximate: eps must be positive");
  if (hull.empty() || !hull.bounded()) throw InvalidArgument("plc_approximate: empty hull");
  // Tiny slack so that grid values computed as k * eps land on the right node.
  const auto lo = static_cast<std::int64_t>(std::floor(hull.lo / eps + 1e-9));
  const auto hi = static_cast<std::int64_t>(std::ceil(hull.hi / eps - 1e-9));
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t k = lo; k <= hi; ++k) {
    nodes.push_back(f(t_frozen, static_cast<double>(k) * eps));
  }
  return PLCFlux(eps, lo, std::move(nodes));
}

std::int64_t grid_index(double u, double eps) {
  const double s = u / eps;
  const double k = std::round(s);
  if (std::abs(s - k) > 1e-9 * std::max(1.0, std::abs(s))) {
    throw InvalidArgument("value " + std::to_string(u) + " is not on the grid of spacing " +
                          std::to_string(eps));
  }
  return static_cast<std::int64_t>(k);
}

}  // namespace wft
