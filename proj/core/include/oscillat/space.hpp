#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "oscillat/piecewise.hpp"

namespace oscillat {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

enum class Engine { point_cloud, interval_1d };

/// Ball in an atomic space: prescribed center and radius plus the resolved open
/// ball {y : d(center, y) < radius}.
struct Ball {
  std::size_t center = 0;
  double radius = 0.0;
  std::vector<std::size_t> members;  // ordered by (distance to center, index)
  double measure = 0.0;
  double intrinsic_radius = 0.0;  // half the diameter of the member set
};

/// Ball in the interval engine. The trace (lo, hi) is B(center, radius) ∩ (a, b).
struct IntervalBall {
  double center = 0.0;
  double radius = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double measure = 0.0;
  std::size_t lo_node = npos;  // grid indices when lo/hi are grid nodes
  std::size_t hi_node = npos;

  double intrinsic_radius() const { return 0.5 * (hi - lo); }
};

/// Finite atomic metric measure space. Points are indices 0..n-1; the metric is
/// either an explicit matrix or Euclidean on stored coordinates.
///
/// Construction checks shapes only. Metric axioms and weights are checked by
/// validate_space, which never throws.
class PointCloud {
 public:
  PointCloud() = default;
  /// Row-major n×n distance matrix.
  PointCloud(std::vector<double> distances, std::vector<double> weights);
  static PointCloud euclidean(const std::vector<std::vector<double>>& coordinates, std::vector<double> weights);
  static PointCloud on_line(std::vector<double> coordinates, std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double distance(std::size_t i, std::size_t j) const;
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  double total_measure() const { return total_; }

  bool has_coordinates() const { return dim_ > 0; }
  std::size_t dimension() const { return dim_; }
  std::span<const double> coordinate(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  /// True for one-dimensional coordinates stored in nondecreasing order.
  bool is_sorted_line() const { return sorted_line_; }

  /// Points with distance(center, ·) < limit, ordered by (distance, index),
  /// together with their distances.
  void sorted_neighbors(std::size_t center, double limit, std::vector<std::size_t>& order,
                        std::vector<double>& dist) const;
  Ball ball(std::size_t center, double radius) const;
  /// Half the diameter of a member set.
  double half_diameter(std::span<const std::size_t> members) const;

 private:
  std::vector<double> matrix_;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  double total_ = 0.0;
  bool sorted_line_ = false;
};

/// Open interval (a, b) with a piecewise-constant density and a grid of nodes
/// a = g_0 < g_1 < ... < g_{N-1} = b. Grid nodes are the candidate interval
/// endpoints; the cells (g_k, g_{k+1}) are where maximal fields are evaluated.
class IntervalSpace {
 public:
  IntervalSpace() = default;
  IntervalSpace(double a, double b, StepDensity density, std::vector<double> grid);

  static IntervalSpace lebesgue(double a, double b, std::size_t nodes);

  double lower() const { return a_; }
  double upper() const { return b_; }
  const StepDensity& density() const { return density_; }
  std::span<const double> grid() const { return grid_; }
  std::size_t nodes() const { return grid_.size(); }
  std::size_t cells() const { return grid_.size() - 1; }
  double cell_midpoint(std::size_t k) const { return 0.5 * (grid_[k] + grid_[k + 1]); }
  double cell_measure(std::size_t k) const { return node_mass_[k + 1] - node_mass_[k]; }
  /// Cell containing x (right cell at a node).
  std::size_t cell_of(double x) const;

  double measure(double lo, double hi) const { return cumulative_mass(hi) - cumulative_mass(lo); }
  double cumulative_mass(double x) const;
  /// μ((a, g_k)), exact.
  double node_mass(std::size_t k) const { return node_mass_[k]; }
  double total_measure() const { return node_mass_.back(); }

  /// Marks a finite window cut out of an unbounded space; L is the window length.
  void set_truncated(double length) { truncation_ = length; }
  bool truncated() const { return truncation_ > 0; }
  double truncation() const { return truncation_; }

  IntervalSpace with_grid(std::vector<double> grid) const;
  IntervalBall interval(double lo, double hi) const;

 private:
  double a_ = 0.0, b_ = 1.0;
  StepDensity density_;
  std::vector<double> grid_;
  std::vector<double> piece_mass_;  // μ((a, breakpoint_k))
  std::vector<double> node_mass_;
  double truncation_ = 0.0;
};

/// Uniform grid with `nodes` nodes on [a, b], merged with any extra points inside (a, b).
std::vector<double> uniform_grid(double a, double b, std::size_t nodes, std::span<const double> extra = {});

/// Real values attached to the points of an atomic space.
struct SampledFunction {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Atomic view of an interval space: one point per cell at its midpoint, weight
/// equal to the exact cell measure.
PointCloud atomize(const IntervalSpace& space);
/// μ-weighted cell means of f, matching atomize().
SampledFunction atomize(const IntervalSpace& space, const PiecewiseLinear& f);

struct Violation {
  std::string kind;  // symmetry, triangle, identity, nonnegativity, weight, size, ...
  std::vector<std::size_t> witness;
  double magnitude = 0.0;
};

struct ValidationReport {
  bool usable = true;
  std::vector<Violation> violations;
  std::size_t triples_checked = 0;
};

inline constexpr double kMetricTolerance = 1e-9;

ValidationReport validate_space(const PointCloud& space);
ValidationReport validate_space(const IntervalSpace& space);

double diameter(const PointCloud& space);
double diameter(const IntervalSpace& space);

}  // namespace oscillat
