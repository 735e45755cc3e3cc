#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oscillat/space.hpp"

namespace oscillat {

struct PowerBound {
  double exponent = 0.0;
  double constant = 0.0;
};

struct AnnularFit {
  double beta = 1.0;
  double constant = 0.0;
  bool capped = false;  // no candidate β met the cap; β = 0.1 reported with its constant
};

/// Sampled envelopes of the geometric constants. Each fit fills its own part.
struct GeometryFit {
  std::optional<double> doubling_constant;
  std::optional<PowerBound> rlmb;
  std::optional<PowerBound> lmb;
  std::optional<AnnularFit> annular;
  std::vector<double> radii;
  std::size_t centers_sampled = 0;
  /// True when every center of the space was scanned (no subsampling).
  bool exhaustive = false;
};

struct GeometrySampling {
  std::size_t max_centers = 4096;
};

/// Log-spaced radii from half the smallest gap between points up to `upper`
/// (exclusive). `upper` defaults to diam(X).
std::vector<double> default_radii(const PointCloud& space, std::size_t count = 48, double upper = 0.0);
std::vector<double> default_radii(const IntervalSpace& space, std::size_t count = 48, double upper = 0.0);

/// max over sampled (x, r) of μ(B(x,2r)) / μ(B(x,r)). Radii outside (0, diam) are ignored.
GeometryFit estimate_doubling_constant(const PointCloud& space, std::span<const double> radii,
                                       GeometrySampling sampling = {});
GeometryFit estimate_doubling_constant(const IntervalSpace& space, std::span<const double> radii,
                                       GeometrySampling sampling = {});

/// c_L = min over sampled (x, r), r < 2 diam, of μ(B(x,r)) / r^Q, capped at 1.
/// Without Q, Q is the largest sampled log-slope of r ↦ μ(B(x,r)) over chords
/// [r, R] with R ≥ 2r and r at least twice the smallest gap.
GeometryFit fit_lower_mass_bound(const PointCloud& space, std::optional<double> Q = {}, GeometrySampling sampling = {});
GeometryFit fit_lower_mass_bound(const IntervalSpace& space, std::optional<double> Q = {},
                                 GeometrySampling sampling = {});

/// c = min over sampled x ∈ B(y,R), r ≤ R of μ(B(x,r)) / (μ(B(y,R)) (r/R)^Q), capped at 1.
GeometryFit fit_relative_lower_mass_bound(const PointCloud& space, double Q, GeometrySampling sampling = {.max_centers = 64});
GeometryFit fit_relative_lower_mass_bound(const IntervalSpace& space, double Q,
                                          GeometrySampling sampling = {.max_centers = 64});

/// Largest β in {1, 0.9, ..., 0.1} with
/// μ(B(x,R) \ B(x,r)) ≤ C_β ((R-r)/R)^β μ(B(x,R)) on the sample and C_β ≤ c_max.
GeometryFit fit_annular_decay(const PointCloud& space, double c_max = 4.0, GeometrySampling sampling = {.max_centers = 512});
GeometryFit fit_annular_decay(const IntervalSpace& space, double c_max = 4.0,
                              GeometrySampling sampling = {.max_centers = 512});

}  // namespace oscillat
