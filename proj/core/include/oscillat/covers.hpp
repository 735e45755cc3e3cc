#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "oscillat/space.hpp"

namespace oscillat {

/// δ-cover by balls of radius δ whose centers form a maximal (2δ/5)-separated
/// set, chosen greedily in point order. The fifth-balls are pairwise disjoint.
struct Cover {
  double delta = 0.0;
  std::vector<Ball> balls;
  /// overlap[j] = max over points of #{i : point ∈ K_j·B_i} for K_j = overlap_factors[j].
  static constexpr std::array<double, 4> overlap_factors{1.0, 2.0, 5.0, 7.0};
  std::array<std::size_t, 4> overlap{};

  std::size_t overlap_for(double K) const;
};

/// φ_i = ψ_i / Σ_j ψ_j with ψ_i(x) = clamp(2 - d(x, c_i)/δ, 0, 1).
/// Stored sparsely: rows[x] lists (ball index, φ_i(x)) for φ_i(x) > 0, by ball index.
struct Partition {
  Cover cover;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  double lipschitz_gauge = 0.0;  // max over i and pairs d(x,y) < δ of |φ_i(x) - φ_i(y)| / d(x,y)
};

Cover build_cover(const PointCloud& space, double delta);
/// Throws std::domain_error if some point is not covered.
Partition build_partition(const PointCloud& space, const Cover& cover);

/// f_δ = Σ_i f_{B_i} φ_i with f_{B_i} the μ-mean over the full member set of B_i.
SampledFunction discrete_convolution(const PointCloud& space, const SampledFunction& f, const Partition& partition);
SampledFunction discrete_convolution(const PointCloud& space, const SampledFunction& f, double delta);

struct GaugeResult {
  double value = 0.0;
  bool no_pairs = false;  // no pair with 0 < d < scale existed
};

/// max over pairs with 0 < d(x,y) < scale of |g(x) - g(y)| / d(x,y).
GaugeResult lipschitz_gauge(const PointCloud& space, const SampledFunction& g, double scale);

}  // namespace oscillat
