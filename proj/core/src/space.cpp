#include "oscillat/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oscillat/integrate.hpp"
#include "oscillat/random.hpp"

namespace oscillat {

// ---------------------------------------------------------------- PointCloud

PointCloud::PointCloud(std::vector<double> distances, std::vector<double> weights)
    : matrix_(std::move(distances)), weights_(std::move(weights)) {
  const std::size_t n = weights_.size();
  if (matrix_.size() != n * n) throw std::invalid_argument("distance matrix must be n×n for n weights");
  total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

PointCloud PointCloud::euclidean(const std::vector<std::vector<double>>& coordinates, std::vector<double> weights) {
  if (coordinates.size() != weights.size()) throw std::invalid_argument("one weight per point required");
  PointCloud s;
  s.dim_ = coordinates.empty() ? 1 : coordinates.front().size();
  if (s.dim_ == 0) throw std::invalid_argument("coordinates must have at least one component");
  for (const auto& row : coordinates) {
    if (row.size() != s.dim_) throw std::invalid_argument("all points must have the same dimension");
    s.coords_.insert(s.coords_.end(), row.begin(), row.end());
  }
  s.weights_ = std::move(weights);
  s.total_ = std::accumulate(s.weights_.begin(), s.weights_.end(), 0.0);
  s.sorted_line_ = s.dim_ == 1 && std::is_sorted(s.coords_.begin(), s.coords_.end());
  return s;
}

PointCloud PointCloud::on_line(std::vector<double> coordinates, std::vector<double> weights) {
  if (coordinates.size() != weights.size()) throw std::invalid_argument("one weight per point required");
  PointCloud s;
  s.dim_ = 1;
  s.coords_ = std::move(coordinates);
  s.weights_ = std::move(weights);
  s.total_ = std::accumulate(s.weights_.begin(), s.weights_.end(), 0.0);
  s.sorted_line_ = std::is_sorted(s.coords_.begin(), s.coords_.end());
  return s;
}

double PointCloud::distance(std::size_t i, std::size_t j) const {
  if (dim_ == 0) return matrix_[i * size() + j];
  if (dim_ == 1) return std::fabs(coords_[i] - coords_[j]);
  double s = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double d = coords_[i * dim_ + k] - coords_[j * dim_ + k];
    s += d * d;
  }
  return std::sqrt(s);
}

void PointCloud::sorted_neighbors(std::size_t center, double limit, std::vector<std::size_t>& order,
                                  std::vector<double>& dist) const {
  order.clear();
  dist.clear();
  const std::size_t n = size();
  if (sorted_line_) {
    // Walk outward from the center; coordinates are sorted so both sides come out
    // in increasing distance. Ties go to the smaller index (the left side).
    std::ptrdiff_t l = static_cast<std::ptrdiff_t>(center) - 1;
    std::size_t r = center;
    const double x = coords_[center];
    while (true) {
      const double dl = l >= 0 ? x - coords_[static_cast<std::size_t>(l)] : INFINITY;
      const double dr = r < n ? coords_[r] - x : INFINITY;
      if (!(std::min(dl, dr) < limit)) break;
      if (dl <= dr) {
        order.push_back(static_cast<std::size_t>(l));
        dist.push_back(dl);
        --l;
      } else {
        order.push_back(r);
        dist.push_back(dr);
        ++r;
      }
    }
    return;
  }
  std::vector<std::pair<double, std::size_t>> tmp;
  tmp.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = distance(center, j);
    if (d < limit) tmp.emplace_back(d, j);
  }
  std::sort(tmp.begin(), tmp.end());
  order.reserve(tmp.size());
  dist.reserve(tmp.size());
  for (const auto& [d, j] : tmp) {
    order.push_back(j);
    dist.push_back(d);
  }
}

double PointCloud::half_diameter(std::span<const std::size_t> members) const {
  if (members.size() < 2) return 0.0;
  if (dim_ == 1) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i : members) {
      lo = std::min(lo, coords_[i]);
      hi = std::max(hi, coords_[i]);
    }
    return 0.5 * (hi - lo);
  }
  double d = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) d = std::max(d, distance(members[a], members[b]));
  return 0.5 * d;
}

Ball PointCloud::ball(std::size_t center, double radius) const {
  Ball B;
  B.center = center;
  B.radius = radius;
  std::vector<double> dist;
  sorted_neighbors(center, radius, B.members, dist);
  for (std::size_t i : B.members) B.measure += weights_[i];
  B.intrinsic_radius = half_diameter(B.members);
  return B;
}

// ------------------------------------------------------------- IntervalSpace

IntervalSpace::IntervalSpace(double a, double b, StepDensity density, std::vector<double> grid)
    : a_(a), b_(b), density_(std::move(density)), grid_(std::move(grid)) {
  if (density_.values.size() != density_.breakpoints.size() + 1)
    throw std::invalid_argument("density needs one value per piece (breakpoints + 1)");
  if (grid_.size() < 2) throw std::invalid_argument("interval grid needs at least two nodes");
  piece_mass_.assign(density_.values.size(), 0.0);
  for (std::size_t j = 1; j < density_.values.size(); ++j) {
    const double start = j == 1 ? a_ : density_.breakpoints[j - 2];
    piece_mass_[j] = piece_mass_[j - 1] + density_.values[j - 1] * (density_.breakpoints[j - 1] - start);
  }
  node_mass_.resize(grid_.size());
  for (std::size_t k = 0; k < grid_.size(); ++k) node_mass_[k] = cumulative_mass(grid_[k]);
}

IntervalSpace IntervalSpace::lebesgue(double a, double b, std::size_t nodes) {
  return {a, b, StepDensity::lebesgue(), uniform_grid(a, b, nodes)};
}

double IntervalSpace::cumulative_mass(double x) const {
  x = std::clamp(x, a_, b_);
  const std::size_t j = density_.piece_of(x);
  const double start = j == 0 ? a_ : density_.breakpoints[j - 1];
  return piece_mass_[j] + density_.values[j] * (x - start);
}

std::size_t IntervalSpace::cell_of(double x) const {
  auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  std::size_t k = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
  return std::min(k, cells() - 1);
}

IntervalSpace IntervalSpace::with_grid(std::vector<double> grid) const {
  IntervalSpace s(a_, b_, density_, std::move(grid));
  s.truncation_ = truncation_;
  return s;
}

IntervalBall IntervalSpace::interval(double lo, double hi) const {
  IntervalBall B;
  B.lo = std::max(lo, a_);
  B.hi = std::min(hi, b_);
  B.center = 0.5 * (B.lo + B.hi);
  B.radius = 0.5 * (B.hi - B.lo);
  B.measure = measure(B.lo, B.hi);
  auto find = [&](double x) {
    auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
    return it != grid_.end() && *it == x ? static_cast<std::size_t>(it - grid_.begin()) : npos;
  };
  B.lo_node = find(B.lo);
  B.hi_node = find(B.hi);
  return B;
}

std::vector<double> uniform_grid(double a, double b, std::size_t nodes, std::span<const double> extra) {
  if (nodes < 2) throw std::invalid_argument("uniform grid needs at least two nodes");
  if (!(a < b)) throw std::invalid_argument("uniform grid needs a < b");
  std::vector<double> g(nodes);
  for (std::size_t k = 0; k < nodes; ++k) g[k] = a + (b - a) * (static_cast<double>(k) / static_cast<double>(nodes - 1));
  g.back() = b;
  const double snap = 1e-9 * (b - a);
  std::vector<double> inserted;
  for (double x : extra) {
    if (!(x > a && x < b)) continue;
    auto it = std::lower_bound(g.begin(), g.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - g.begin());
    // Snap the nearest uniform node onto a breakpoint that almost coincides with it.
    if (hi < g.size() && g[hi] - x < snap && hi + 1 < g.size() && hi > 0) {
      g[hi] = x;
    } else if (hi > 0 && x - g[hi - 1] < snap && hi - 1 > 0) {
      g[hi - 1] = x;
    } else {
      inserted.push_back(x);
    }
  }
  std::sort(inserted.begin(), inserted.end());
  std::vector<double> out = merge_knots(g, inserted);
  return out;
}

PointCloud atomize(const IntervalSpace& space) {
  std::vector<double> x(space.cells()), w(space.cells());
  for (std::size_t k = 0; k < space.cells(); ++k) {
    x[k] = space.cell_midpoint(k);
    w[k] = space.cell_measure(k);
  }
  return PointCloud::on_line(std::move(x), std::move(w));
}

SampledFunction atomize(const IntervalSpace& space, const PiecewiseLinear& f) {
  ExactIntegrator I(f, space.density());
  SampledFunction out;
  out.values.resize(space.cells());
  const auto g = space.grid();
  for (std::size_t k = 0; k < space.cells(); ++k) {
    out.values[k] = I.direct_integral(g[k], g[k + 1]) / I.direct_mass(g[k], g[k + 1]);
  }
  return out;
}

// ---------------------------------------------------------------- validation

namespace {

void add(ValidationReport& r, Violation v) {
  r.usable = false;
  std::size_t same = 0;
  for (const auto& e : r.violations) same += e.kind == v.kind;
  if (same < 10) r.violations.push_back(std::move(v));
}

}  // namespace

ValidationReport validate_space(const PointCloud& space) {
  ValidationReport r;
  const std::size_t n = space.size();
  if (n < 2) add(r, {"size", {}, static_cast<double>(n)});
  for (std::size_t i = 0; i < n; ++i) {
    const double w = space.weight(i);
    if (!(w > 0) || !std::isfinite(w)) add(r, {"weight", {i}, w});
  }
  if (!(space.total_measure() > 0) || !std::isfinite(space.total_measure()))
    add(r, {"total-measure", {}, space.total_measure()});

  if (!space.has_coordinates()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (space.distance(i, i) != 0.0) add(r, {"identity", {i}, space.distance(i, i)});
      for (std::size_t j = 0; j < n; ++j) {
        const double d = space.distance(i, j);
        if (!(d >= 0) || !std::isfinite(d)) add(r, {"nonnegativity", {i, j}, d});
        if (i != j && d == 0.0) add(r, {"separation", {i, j}, d});
        if (j > i && std::fabs(d - space.distance(j, i)) > kMetricTolerance)
          add(r, {"symmetry", {i, j}, std::fabs(d - space.distance(j, i))});
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (double c : space.coordinate(i)) {
        if (!std::isfinite(c)) add(r, {"coordinate", {i}, c});
      }
    }
  }

  auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
    const double excess = space.distance(a, c) - space.distance(a, b) - space.distance(b, c);
    if (excess > kMetricTolerance) add(r, {"triangle", {a, b, c}, excess});
    ++r.triples_checked;
  };
  if (n <= 160) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check(a, b, c);
  } else {
    SeededRng rng(0x5eed);
    for (std::size_t t = 0; t < 2'000'000; ++t) check(rng.index(n), rng.index(n), rng.index(n));
  }
  return r;
}

ValidationReport validate_space(const IntervalSpace& space) {
  ValidationReport r;
  const double a = space.lower(), b = space.upper();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) add(r, {"interval", {}, b - a});
  const auto& d = space.density();
  for (std::size_t j = 0; j < d.breakpoints.size(); ++j) {
    const double x = d.breakpoints[j];
    if (!(x > a && x < b)) add(r, {"density-breakpoint", {j}, x});
    if (j > 0 && !(d.breakpoints[j - 1] < x)) add(r, {"density-order", {j - 1, j}, x});
  }
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    if (!(d.values[j] > 0) || !std::isfinite(d.values[j])) add(r, {"weight", {j}, d.values[j]});
  }
  const auto g = space.grid();
  if (g.front() != a || g.back() != b) add(r, {"grid-ends", {}, g.front()});
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    if (!(g[k] < g[k + 1])) add(r, {"grid-order", {k, k + 1}, g[k + 1] - g[k]});
  }
  return r;
}

double diameter(const PointCloud& space) {
  const std::size_t n = space.size();
  if (n < 2) return 0.0;
  if (space.is_sorted_line()) return space.coordinate(n - 1)[0] - space.coordinate(0)[0];
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d = std::max(d, space.distance(i, j));
  return d;
}

double diameter(const IntervalSpace& space) { return space.upper() - space.lower(); }

}  // namespace oscillat
