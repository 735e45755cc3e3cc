#include "oscillat/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oscillat {

std::string to_string(RadiusConvention c) { return c == RadiusConvention::intrinsic ? "intrinsic" : "prescribed"; }

RadiusConvention parse_convention(const std::string& s) {
  if (s == "intrinsic") return RadiusConvention::intrinsic;
  if (s == "prescribed") return RadiusConvention::prescribed;
  throw std::invalid_argument("unknown radius convention '" + s + "' (expected intrinsic or prescribed)");
}

std::vector<double> geometric_radii(double lo, double hi, double ratio) {
  if (!(lo > 0) || !(hi >= lo) || !(ratio > 1)) throw std::invalid_argument("geometric radii need 0 < lo <= hi and ratio > 1");
  std::vector<double> r;
  for (double x = lo; x < hi; x *= ratio) r.push_back(x);
  r.push_back(hi);
  return r;
}

namespace {

void check_range(double r_min, double r_max, double diam) {
  if (!(r_min > 0) || !(r_min <= r_max) || !(r_max < 2.0 * diam))
    throw std::invalid_argument("ball family needs 0 < r_min <= r_max < 2 diam(X)");
}

double min_cell(const IntervalSpace& space) {
  double h = std::numeric_limits<double>::infinity();
  const auto g = space.grid();
  for (std::size_t k = 0; k + 1 < g.size(); ++k) h = std::min(h, g[k + 1] - g[k]);
  return h;
}

}  // namespace

// ------------------------------------------------------------ IntervalFamily

IntervalFamily::IntervalFamily(const IntervalSpace& space, double r_min, double r_max, RadiusConvention convention)
    : space_(&space), r_min_(r_min), r_max_(r_max), convention_(convention) {
  check_range(r_min, r_max, diameter(space));
  if (convention == RadiusConvention::prescribed) radius_grid_ = geometric_radii(r_min, r_max, 1.05);
}

IntervalFamily IntervalFamily::full(const IntervalSpace& space, RadiusConvention convention) {
  const double h = min_cell(space);
  if (convention == RadiusConvention::intrinsic) return {space, 0.5 * h, 0.5 * diameter(space), convention};
  return {space, h, 2.0 * diameter(space) * (1.0 - 1e-12), convention};
}

IntervalFamily IntervalFamily::window(double lo, double hi) const {
  IntervalFamily f = *this;
  f.r_min_ = std::max(r_min_, lo);
  f.r_max_ = std::min(r_max_, hi);
  return f;
}

IntervalFamily IntervalFamily::with_measure_cap(double cap) const {
  IntervalFamily f = *this;
  f.measure_cap_ = measure_cap_ ? std::min(*measure_cap_, cap) : cap;
  return f;
}

std::size_t IntervalFamily::rows() const {
  const std::size_t N = space_->nodes();
  return convention_ == RadiusConvention::intrinsic ? N - 1 : (N >= 2 ? N - 2 : 0);
}

std::size_t IntervalFamily::size() const {
  std::size_t n = 0;
  if (r_min_ > r_max_) return 0;
  if (convention_ == RadiusConvention::intrinsic && !measure_cap_) {
    const auto g = space_->grid();
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      // exact count with the same half-length test as the enumerator
      auto lo = std::lower_bound(g.begin() + i + 1, g.end(), g[i] + 2.0 * r_min_);
      while (lo > g.begin() + i + 1 && 0.5 * (*(lo - 1) - g[i]) >= r_min_) --lo;
      while (lo < g.end() && 0.5 * (*lo - g[i]) < r_min_) ++lo;
      auto hi = std::upper_bound(lo, g.end(), g[i] + 2.0 * r_max_);
      while (hi > lo && 0.5 * (*(hi - 1) - g[i]) > r_max_) --hi;
      while (hi < g.end() && 0.5 * (*hi - g[i]) <= r_max_) ++hi;
      n += static_cast<std::size_t>(hi - lo);
    }
    return n;
  }
  for (std::size_t r = 0; r < rows(); ++r) for_each_in_row(r, [&](const FamilyInterval&) { ++n; });
  return n;
}

double IntervalFamily::snap(double x) const {
  const auto g = space_->grid();
  auto it = std::lower_bound(g.begin(), g.end(), x);
  const double tol = 1e-12 * (space_->upper() - space_->lower());
  if (it != g.end() && *it - x <= tol) return *it;
  if (it != g.begin() && x - *(it - 1) <= tol) return *(it - 1);
  return x;
}

FamilyInterval IntervalFamily::prescribed_member(std::size_t c, double r, std::size_t node_j, std::uint64_t key) const {
  const auto g = space_->grid();
  const double x = g[c];
  FamilyInterval m;
  m.center = x;
  m.radius = r;
  m.key = key;
  if (node_j != npos && node_j > c) {
    m.hi = g[node_j];
    m.lo = std::max(space_->lower(), snap(x - r));
  } else if (node_j != npos) {
    m.lo = g[node_j];
    m.hi = std::min(space_->upper(), snap(x + r));
  } else {
    m.lo = std::max(space_->lower(), snap(x - r));
    m.hi = std::min(space_->upper(), snap(x + r));
  }
  auto find = [&](double v) {
    auto it = std::lower_bound(g.begin(), g.end(), v);
    return it != g.end() && *it == v ? static_cast<std::size_t>(it - g.begin()) : npos;
  };
  m.lo_node = find(m.lo);
  m.hi_node = find(m.hi);
  return m;
}

FamilyInterval IntervalFamily::member(std::uint64_t key) const {
  const auto g = space_->grid();
  const std::size_t N = g.size();
  const auto first = static_cast<std::size_t>(key >> 32);
  const auto second = static_cast<std::size_t>(key & 0xffffffffu);
  if (convention_ == RadiusConvention::intrinsic) {
    FamilyInterval m;
    m.lo = g[first];
    m.hi = g[second];
    m.center = 0.5 * (m.lo + m.hi);
    m.radius = 0.5 * (m.hi - m.lo);
    m.lo_node = first;
    m.hi_node = second;
    m.key = key;
    return m;
  }
  if (second < N) return prescribed_member(first, std::fabs(g[second] - g[first]), second, key);
  return prescribed_member(first, radius_grid_.at(second - N), npos, key);
}

IntervalBall IntervalFamily::ball(const FamilyInterval& m) const {
  IntervalBall B;
  B.center = m.center;
  B.radius = m.radius;
  B.lo = m.lo;
  B.hi = m.hi;
  B.measure = space_->measure(m.lo, m.hi);
  B.lo_node = m.lo_node;
  B.hi_node = m.hi_node;
  return B;
}

IntervalFamily enumerate_balls(const IntervalSpace& space, double r_min, double r_max, RadiusConvention convention) {
  return {space, r_min, r_max, convention};
}

// --------------------------------------------------------------- PointFamily

PointFamily::PointFamily(const PointCloud& space, double r_min, double r_max, RadiusConvention convention,
                         RadiusSampling sampling, double grid_ratio)
    : space_(&space), r_min_(r_min), r_max_(r_max), convention_(convention), sampling_(sampling) {
  check_range(r_min, r_max, diameter(space));
  radius_grid_ = geometric_radii(r_min, r_max, grid_ratio);
}

PointFamily PointFamily::full(const PointCloud& space, RadiusConvention convention, RadiusSampling sampling,
                              double grid_ratio) {
  const double diam = diameter(space);
  double gap = std::numeric_limits<double>::infinity();
  if (space.is_sorted_line()) {
    for (std::size_t i = 0; i + 1 < space.size(); ++i) {
      const double d = space.distance(i, i + 1);
      if (d > 0) gap = std::min(gap, d);
    }
  } else {
    for (std::size_t i = 0; i < space.size(); ++i)
      for (std::size_t j = i + 1; j < space.size(); ++j) {
        const double d = space.distance(i, j);
        if (d > 0) gap = std::min(gap, d);
      }
  }
  if (!std::isfinite(gap)) throw std::invalid_argument("ball family needs two distinct points");
  return {space, 0.5 * gap, 2.0 * diam * (1.0 - 1e-12), convention, sampling, grid_ratio};
}

PointFamily PointFamily::window(double lo, double hi) const {
  PointFamily f = *this;
  f.r_min_ = std::max(r_min_, lo);
  f.r_max_ = std::min(r_max_, hi);
  return f;
}

void PointFamily::row(std::size_t center, Row& out) const {
  out.center = center;
  out.radii.clear();
  out.counts.clear();
  out.weight_radius.clear();
  if (r_min_ > r_max_) {
    out.order.clear();
    out.dist.clear();
    return;
  }
  space_->sorted_neighbors(center, std::nextafter(2.0 * r_max_, std::numeric_limits<double>::infinity()), out.order,
                           out.dist);
  const auto& d = out.dist;

  // distinct distances, increasing
  std::vector<double> distinct;
  distinct.reserve(d.size());
  for (double x : d) {
    if (distinct.empty() || x > distinct.back()) distinct.push_back(x);
  }
  auto in_range = [&](double r) { return r >= r_min_ && r <= r_max_; };

  if (sampling_ == RadiusSampling::distance_midpoints) {
    for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
      const double m = 0.5 * (distinct[k] + distinct[k + 1]);
      if (in_range(m)) out.radii.push_back(m);
    }
    for (double r : radius_grid_) {
      if (in_range(r)) out.radii.push_back(r);
    }
  } else {
    double beyond = -1.0;
    for (double r : radius_grid_) {
      if (!in_range(r)) continue;
      // snap into the middle of the gap that contains r
      auto it = std::lower_bound(distinct.begin(), distinct.end(), r);
      if (it == distinct.end()) {
        beyond = std::max(beyond, r);
        continue;
      }
      double s = it == distinct.begin() ? r : 0.5 * (*(it - 1) + *it);
      if (!in_range(s)) s = r;
      out.radii.push_back(s);
    }
    if (beyond > 0) out.radii.push_back(beyond);
  }
  std::sort(out.radii.begin(), out.radii.end());
  out.radii.erase(std::unique(out.radii.begin(), out.radii.end()), out.radii.end());

  out.counts.reserve(out.radii.size());
  for (double r : out.radii) {
    out.counts.push_back(static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), r) - d.begin()));
  }
  if (convention_ == RadiusConvention::prescribed) {
    out.weight_radius = out.radii;
    return;
  }
  const std::size_t M = out.counts.empty() ? 0 : out.counts.back();
  std::vector<double> half(M + 1, 0.0);
  if (space_->has_coordinates() && space_->dimension() == 1) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t q = 0; q < M; ++q) {
      const double x = space_->coordinate(out.order[q])[0];
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      half[q + 1] = 0.5 * (hi - lo);
    }
  } else {
    double diam = 0.0;
    for (std::size_t q = 0; q < M; ++q) {
      for (std::size_t s = 0; s < q; ++s) diam = std::max(diam, space_->distance(out.order[q], out.order[s]));
      half[q + 1] = 0.5 * diam;
    }
  }
  out.weight_radius.reserve(out.counts.size());
  for (std::size_t c : out.counts) out.weight_radius.push_back(half[c]);
}

std::size_t PointFamily::size() const {
  std::size_t n = 0;
  Row r;
  for (std::size_t c = 0; c < rows(); ++c) {
    row(c, r);
    n += r.radii.size();
  }
  return n;
}

PointFamily enumerate_balls(const PointCloud& space, double r_min, double r_max, RadiusConvention convention,
                            RadiusSampling sampling) {
  return {space, r_min, r_max, convention, sampling};
}

}  // namespace oscillat
