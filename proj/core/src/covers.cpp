#include "oscillat/covers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oscillat/parallel.hpp"

namespace oscillat {

std::size_t Cover::overlap_for(double K) const {
  for (std::size_t j = 0; j < overlap_factors.size(); ++j) {
    if (overlap_factors[j] == K) return overlap[j];
  }
  throw std::invalid_argument("overlap is measured only for K in {1, 2, 5, 7}");
}

namespace {

/// visit(i, j, d) for every pair i < j with 0 < d(i, j) < scale.
template <class Visit>
void for_each_close_pair(const PointCloud& space, double scale, Visit&& visit) {
  const std::size_t n = space.size();
  if (space.is_sorted_line()) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = space.coordinate(i)[0];
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = space.coordinate(j)[0] - x;
        if (!(d < scale)) break;
        if (d > 0) visit(i, j, d);
      }
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = space.distance(i, j);
      if (d > 0 && d < scale) visit(i, j, d);
    }
}

/// Centers whose distance to point x is < limit, in ball order.
void centers_near(const PointCloud& space, const std::vector<std::size_t>& centers,
                  const std::vector<double>& center_x, std::size_t x, double limit, std::vector<std::size_t>& out) {
  out.clear();
  if (space.is_sorted_line()) {
    const double px = space.coordinate(x)[0];
    auto lo = std::upper_bound(center_x.begin(), center_x.end(), px - limit);
    for (auto it = lo; it != center_x.end() && *it < px + limit; ++it) {
      const auto i = static_cast<std::size_t>(it - center_x.begin());
      if (std::fabs(*it - px) < limit) out.push_back(i);
    }
    return;
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (space.distance(x, centers[i]) < limit) out.push_back(i);
  }
}

}  // namespace

Cover build_cover(const PointCloud& space, double delta) {
  if (!(delta > 0) || !(delta < 2.0 * diameter(space))) throw std::invalid_argument("cover scale needs 0 < delta < 2 diam(X)");
  const std::size_t n = space.size();
  const double sep = 0.4 * delta;
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < n; ++i) {
    bool free = true;
    if (space.is_sorted_line()) {
      free = centers.empty() || space.distance(i, centers.back()) >= sep;
    } else {
      for (std::size_t c : centers) {
        if (space.distance(i, c) < sep) {
          free = false;
          break;
        }
      }
    }
    if (free) centers.push_back(i);
  }

  Cover cover;
  cover.delta = delta;
  cover.balls.resize(centers.size());
  parallel_for(centers.size(), [&](std::size_t k) { cover.balls[k] = space.ball(centers[k], delta); });

  std::vector<double> cx;
  if (space.is_sorted_line()) {
    for (std::size_t c : centers) cx.push_back(space.coordinate(c)[0]);
  }
  std::vector<std::size_t> near;
  for (std::size_t j = 0; j < Cover::overlap_factors.size(); ++j) {
    std::size_t worst = 0;
    for (std::size_t x = 0; x < n; ++x) {
      centers_near(space, centers, cx, x, Cover::overlap_factors[j] * delta, near);
      worst = std::max(worst, near.size());
    }
    cover.overlap[j] = worst;
  }
  return cover;
}

Partition build_partition(const PointCloud& space, const Cover& cover) {
  const std::size_t n = space.size();
  const double delta = cover.delta;
  std::vector<std::size_t> centers;
  std::vector<double> cx;
  for (const auto& b : cover.balls) {
    centers.push_back(b.center);
    if (space.is_sorted_line()) cx.push_back(space.coordinate(b.center)[0]);
  }
  if (space.is_sorted_line() && !std::is_sorted(cx.begin(), cx.end())) cx.clear();

  Partition P;
  P.cover = cover;
  P.rows.resize(n);
  std::vector<char> uncovered(n, 0);
  parallel_for(n, [&](std::size_t x) {
    std::vector<std::size_t> near;
    if (!cx.empty()) {
      centers_near(space, centers, cx, x, 2.0 * delta, near);
    } else {
      for (std::size_t i = 0; i < centers.size(); ++i) {
        if (space.distance(x, centers[i]) < 2.0 * delta) near.push_back(i);
      }
    }
    auto& row = P.rows[x];
    double total = 0.0;
    for (std::size_t i : near) {
      const double psi = std::clamp(2.0 - space.distance(x, centers[i]) / delta, 0.0, 1.0);
      if (psi > 0) {
        row.emplace_back(i, psi);
        total += psi;
      }
    }
    if (!(total > 0)) {
      uncovered[x] = 1;
      return;
    }
    for (auto& [i, v] : row) v /= total;
  });
  for (std::size_t x = 0; x < n; ++x) {
    if (uncovered[x]) throw std::domain_error("cover does not cover point " + std::to_string(x));
  }

  double gauge = 0.0;
  for_each_close_pair(space, delta, [&](std::size_t x, std::size_t y, double d) {
    const auto& a = P.rows[x];
    const auto& b = P.rows[y];
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      double diff;
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        diff = a[i++].second;
      } else if (i == a.size() || b[j].first < a[i].first) {
        diff = b[j++].second;
      } else {
        diff = std::fabs(a[i++].second - b[j++].second);
      }
      gauge = std::max(gauge, diff / d);
    }
  });
  P.lipschitz_gauge = gauge;
  return P;
}

SampledFunction discrete_convolution(const PointCloud& space, const SampledFunction& f, const Partition& partition) {
  if (f.size() != space.size()) throw std::invalid_argument("function and space sizes differ");
  const auto& balls = partition.cover.balls;
  std::vector<double> means(balls.size());
  for (std::size_t i = 0; i < balls.size(); ++i) {
    double W = 0.0, S = 0.0;
    for (std::size_t m : balls[i].members) {
      W += space.weight(m);
      S += space.weight(m) * f[m];
    }
    means[i] = S / W;
  }
  SampledFunction out;
  out.values.assign(space.size(), 0.0);
  for (std::size_t x = 0; x < space.size(); ++x) {
    double s = 0.0;
    for (const auto& [i, phi] : partition.rows[x]) s += phi * means[i];
    out.values[x] = s;
  }
  return out;
}

SampledFunction discrete_convolution(const PointCloud& space, const SampledFunction& f, double delta) {
  return discrete_convolution(space, f, build_partition(space, build_cover(space, delta)));
}

GaugeResult lipschitz_gauge(const PointCloud& space, const SampledFunction& g, double scale) {
  if (g.size() != space.size()) throw std::invalid_argument("function and space sizes differ");
  GaugeResult r;
  bool any = false;
  for_each_close_pair(space, scale, [&](std::size_t x, std::size_t y, double d) {
    any = true;
    r.value = std::max(r.value, std::fabs(g[x] - g[y]) / d);
  });
  r.no_pairs = !any;
  return r;
}

}  // namespace oscillat
