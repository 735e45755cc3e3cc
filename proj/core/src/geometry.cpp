#include "oscillat/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

#include "oscillat/parallel.hpp"

namespace oscillat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t cap) {
  std::vector<std::size_t> out;
  if (n <= cap || cap < 2) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  out.reserve(cap);
  for (std::size_t k = 0; k < cap; ++k) out.push_back(k * (n - 1) / (cap - 1));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> r(count);
  if (count == 1) {
    r[0] = hi;
    return r;
  }
  const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) r[k] = lo * std::exp(ratio * static_cast<double>(k));
  r.back() = hi;
  return r;
}

/// μ(B(x, r)) as a function of r for one center.
using MassFn = std::function<double(double)>;

struct CenterSet {
  std::size_t count = 0;
  bool exhaustive = false;
  std::function<MassFn(std::size_t)> profile;
  std::function<double(std::size_t, std::size_t)> distance;
};

CenterSet centers_of(const IntervalSpace& space, std::size_t cap) {
  auto idx = std::make_shared<std::vector<std::size_t>>(sample_indices(space.cells(), cap));
  CenterSet c;
  c.count = idx->size();
  c.exhaustive = idx->size() == space.cells();
  c.profile = [&space, idx](std::size_t k) -> MassFn {
    const double x = space.cell_midpoint((*idx)[k]);
    return [&space, x](double r) { return space.measure(x - r, x + r); };
  };
  c.distance = [&space, idx](std::size_t i, std::size_t j) {
    return std::fabs(space.cell_midpoint((*idx)[i]) - space.cell_midpoint((*idx)[j]));
  };
  return c;
}

CenterSet centers_of(const PointCloud& space, std::size_t cap) {
  auto idx = std::make_shared<std::vector<std::size_t>>(sample_indices(space.size(), cap));
  CenterSet c;
  c.count = idx->size();
  c.exhaustive = idx->size() == space.size();
  c.profile = [&space, idx](std::size_t k) -> MassFn {
    std::vector<std::size_t> order;
    std::vector<double> dist;
    space.sorted_neighbors((*idx)[k], kInf, order, dist);
    auto cum = std::make_shared<std::vector<double>>(order.size() + 1, 0.0);
    for (std::size_t q = 0; q < order.size(); ++q) (*cum)[q + 1] = (*cum)[q] + space.weight(order[q]);
    auto d = std::make_shared<std::vector<double>>(std::move(dist));
    return [d, cum](double r) {
      const auto m = static_cast<std::size_t>(std::lower_bound(d->begin(), d->end(), r) - d->begin());
      return (*cum)[m];
    };
  };
  c.distance = [&space, idx](std::size_t i, std::size_t j) { return space.distance((*idx)[i], (*idx)[j]); };
  return c;
}

std::vector<double> usable_radii(std::span<const double> radii, double diam) {
  std::vector<double> r;
  for (double x : radii) {
    if (x > 0 && x < diam) r.push_back(x);
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

GeometryFit doubling(const CenterSet& centers, std::vector<double> radii) {
  if (radii.empty()) throw std::invalid_argument("doubling estimate needs at least one radius in (0, diam)");
  std::vector<double> best(centers.count, 0.0);
  parallel_for(centers.count, [&](std::size_t k) {
    const MassFn mass = centers.profile(k);
    for (double r : radii) best[k] = std::max(best[k], mass(2.0 * r) / mass(r));
  });
  GeometryFit fit;
  fit.doubling_constant = *std::max_element(best.begin(), best.end());
  fit.radii = std::move(radii);
  fit.centers_sampled = centers.count;
  fit.exhaustive = centers.exhaustive;
  return fit;
}

GeometryFit lower_mass(const CenterSet& centers, std::vector<double> radii, std::optional<double> Q) {
  double q = 0.0;
  if (Q) {
    q = *Q;
  } else {
    // chords spanning at least a doubling, above the discreteness scale
    // (radii[0] is half the smallest gap); small spaces fall back to every chord
    auto envelope = [&](double floor_r) {
      std::vector<double> slope(centers.count, -kInf);
      parallel_for(centers.count, [&](std::size_t k) {
        const MassFn mass = centers.profile(k);
        std::size_t J = 0;
        for (std::size_t j = 0; j < radii.size(); ++j) {
          if (radii[j] < floor_r) continue;
          while (J < radii.size() && radii[J] < 2.0 * radii[j]) ++J;
          if (J == radii.size()) break;
          slope[k] = std::max(slope[k], std::log(mass(radii[J]) / mass(radii[j])) / std::log(radii[J] / radii[j]));
        }
      });
      return *std::max_element(slope.begin(), slope.end());
    };
    double s = radii.empty() ? -kInf : envelope(4.0 * radii[0]);
    if (!std::isfinite(s) && !radii.empty()) s = envelope(0.0);
    q = std::max(std::isfinite(s) ? s : 1.0, 1e-6);
  }
  std::vector<double> lo(centers.count, kInf);
  parallel_for(centers.count, [&](std::size_t k) {
    const MassFn mass = centers.profile(k);
    for (double r : radii) lo[k] = std::min(lo[k], mass(r) / std::pow(r, q));
  });
  GeometryFit fit;
  fit.lmb = PowerBound{q, std::min(1.0, *std::min_element(lo.begin(), lo.end()))};
  fit.radii = std::move(radii);
  fit.centers_sampled = centers.count;
  fit.exhaustive = centers.exhaustive;
  return fit;
}

GeometryFit relative_lower_mass(const CenterSet& centers, std::vector<double> radii, double Q) {
  std::vector<MassFn> profiles(centers.count);
  for (std::size_t k = 0; k < centers.count; ++k) profiles[k] = centers.profile(k);
  std::vector<double> lo(centers.count, kInf);
  parallel_for(centers.count, [&](std::size_t y) {
    for (std::size_t iR = 0; iR < radii.size(); ++iR) {
      const double R = radii[iR];
      const double big = profiles[y](R);
      for (std::size_t x = 0; x < centers.count; ++x) {
        if (!(centers.distance(x, y) < R)) continue;
        for (std::size_t ir = 0; ir <= iR; ++ir) {
          const double r = radii[ir];
          lo[y] = std::min(lo[y], profiles[x](r) / (big * std::pow(r / R, Q)));
        }
      }
    }
  });
  GeometryFit fit;
  fit.rlmb = PowerBound{Q, std::min(1.0, *std::min_element(lo.begin(), lo.end()))};
  fit.radii = std::move(radii);
  fit.centers_sampled = centers.count;
  fit.exhaustive = centers.exhaustive;
  return fit;
}

GeometryFit annular(const CenterSet& centers, std::vector<double> radii, double c_max) {
  constexpr std::size_t kBetas = 10;
  std::vector<std::array<double, kBetas>> worst(centers.count);
  parallel_for(centers.count, [&](std::size_t k) {
    worst[k].fill(0.0);
    const MassFn mass = centers.profile(k);
    std::vector<double> m(radii.size());
    for (std::size_t j = 0; j < radii.size(); ++j) m[j] = mass(radii[j]);
    for (std::size_t J = 1; J < radii.size(); ++J) {
      for (std::size_t j = 0; j < J; ++j) {
        const double ratio = (m[J] - m[j]) / m[J];
        const double t = (radii[J] - radii[j]) / radii[J];
        for (std::size_t b = 0; b < kBetas; ++b) {
          const double beta = 1.0 - 0.1 * static_cast<double>(b);
          worst[k][b] = std::max(worst[k][b], ratio / std::pow(t, beta));
        }
      }
    }
  });
  std::array<double, kBetas> C{};
  for (const auto& w : worst)
    for (std::size_t b = 0; b < kBetas; ++b) C[b] = std::max(C[b], w[b]);
  AnnularFit out{0.1, C[kBetas - 1], true};
  for (std::size_t b = 0; b < kBetas; ++b) {
    if (C[b] <= c_max) {
      out = {1.0 - 0.1 * static_cast<double>(b), C[b], false};
      break;
    }
  }
  GeometryFit fit;
  fit.annular = out;
  fit.radii = std::move(radii);
  fit.centers_sampled = centers.count;
  fit.exhaustive = centers.exhaustive;
  return fit;
}

double smallest_gap(const PointCloud& space) {
  double g = kInf;
  if (space.is_sorted_line()) {
    for (std::size_t i = 0; i + 1 < space.size(); ++i) {
      const double d = space.distance(i, i + 1);
      if (d > 0) g = std::min(g, d);
    }
  } else {
    for (std::size_t i = 0; i < space.size(); ++i)
      for (std::size_t j = i + 1; j < space.size(); ++j) {
        const double d = space.distance(i, j);
        if (d > 0) g = std::min(g, d);
      }
  }
  return g;
}

}  // namespace

std::vector<double> default_radii(const PointCloud& space, std::size_t count, double upper) {
  const double diam = diameter(space);
  if (upper <= 0) upper = diam;
  const double gap = smallest_gap(space);
  if (!std::isfinite(gap) || count == 0) return {};
  return log_spaced(0.5 * gap, upper * (1.0 - 1e-9), count);
}

std::vector<double> default_radii(const IntervalSpace& space, std::size_t count, double upper) {
  if (upper <= 0) upper = diameter(space);
  double gap = kInf;
  for (std::size_t k = 0; k < space.cells(); ++k) gap = std::min(gap, space.grid()[k + 1] - space.grid()[k]);
  if (count == 0) return {};
  return log_spaced(0.5 * gap, upper * (1.0 - 1e-9), count);
}

GeometryFit estimate_doubling_constant(const PointCloud& space, std::span<const double> radii,
                                       GeometrySampling sampling) {
  return doubling(centers_of(space, sampling.max_centers), usable_radii(radii, diameter(space)));
}

GeometryFit estimate_doubling_constant(const IntervalSpace& space, std::span<const double> radii,
                                       GeometrySampling sampling) {
  return doubling(centers_of(space, sampling.max_centers), usable_radii(radii, diameter(space)));
}

GeometryFit fit_lower_mass_bound(const PointCloud& space, std::optional<double> Q, GeometrySampling sampling) {
  return lower_mass(centers_of(space, sampling.max_centers), default_radii(space, 48, 2.0 * diameter(space)), Q);
}

GeometryFit fit_lower_mass_bound(const IntervalSpace& space, std::optional<double> Q, GeometrySampling sampling) {
  return lower_mass(centers_of(space, sampling.max_centers), default_radii(space, 48, 2.0 * diameter(space)), Q);
}

GeometryFit fit_relative_lower_mass_bound(const PointCloud& space, double Q, GeometrySampling sampling) {
  return relative_lower_mass(centers_of(space, sampling.max_centers), default_radii(space, 32, 2.0 * diameter(space)), Q);
}

GeometryFit fit_relative_lower_mass_bound(const IntervalSpace& space, double Q, GeometrySampling sampling) {
  return relative_lower_mass(centers_of(space, sampling.max_centers), default_radii(space, 32, 2.0 * diameter(space)), Q);
}

GeometryFit fit_annular_decay(const PointCloud& space, double c_max, GeometrySampling sampling) {
  return annular(centers_of(space, sampling.max_centers), default_radii(space, 24), c_max);
}

GeometryFit fit_annular_decay(const IntervalSpace& space, double c_max, GeometrySampling sampling) {
  return annular(centers_of(space, sampling.max_centers), default_radii(space, 24), c_max);
}

}  // namespace oscillat
