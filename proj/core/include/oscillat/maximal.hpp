#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "oscillat/family.hpp"
#include "oscillat/oscillation.hpp"
#include "oscillat/piecewise.hpp"
#include "oscillat/space.hpp"

namespace oscillat {

/// M^α f per evaluation point: grid cells in the interval engine, points in the
/// atomic engine. Points no family ball contains hold -inf.
struct MaximalField {
  std::vector<double> values;
  std::vector<BallSummary> argmax;
  double alpha = 0.0;
  RadiusConvention convention = RadiusConvention::intrinsic;
  Engine engine = Engine::interval_1d;

  std::size_t size() const { return values.size(); }
  bool defined(std::size_t i) const { return std::isfinite(values[i]); }
  bool all_defined() const;
};

/// M^α f(x) = sup over family balls B ∋ x of rad(B)^α · mean_B |f|, with rad(B)
/// per the family's convention. In the interval engine a cell belongs to B when
/// it lies entirely inside B's trace.
///
/// Throws std::invalid_argument for α < 0, α ≥ Q, or α > 0 on a truncated space.
/// Q defaults to 1 in the interval engine and to the fitted lower-mass exponent
/// in the atomic engine.
MaximalField fractional_maximal(const IntervalSpace& space, const PiecewiseLinear& f, double alpha,
                                const IntervalFamily& family, std::optional<double> Q = {});
MaximalField fractional_maximal(const PointCloud& space, const SampledFunction& f, double alpha,
                                const PointFamily& family, std::optional<double> Q = {});

struct SplitField {
  MaximalField local;   // radii < λr
  MaximalField global;  // radii ≥ λr
};

SplitField local_global_split(const IntervalSpace& space, const PiecewiseLinear& f, double alpha, double lambda,
                              double r, const IntervalFamily& family, std::optional<double> Q = {});
SplitField local_global_split(const PointCloud& space, const SampledFunction& f, double alpha, double lambda, double r,
                              const PointFamily& family, std::optional<double> Q = {});

/// p* = pQ / (Q - αp). Returns +inf when αp = Q; throws when αp > Q, p < 1 or α < 0.
double conjugate_exponent(double p, double alpha, double Q);

/// The interval-engine field as a step function on the grid. All cells must be defined.
PiecewiseLinear to_step_function(const IntervalSpace& space, const MaximalField& field);

/// Cells lying entirely inside [lo, hi]: [first, last). Empty when first == last.
struct CellRange {
  std::size_t first = 0;
  std::size_t last = 0;
  bool empty() const { return first >= last; }
};
CellRange cells_within(const IntervalSpace& space, double lo, double hi);

/// μ-weighted mean, minimum and 𝒪_1 of a per-cell field over a cell range.
double field_mean(const IntervalSpace& space, std::span<const double> values, CellRange cells);
double field_min(std::span<const double> values, CellRange cells);
double field_oscillation(const IntervalSpace& space, std::span<const double> values, CellRange cells);

}  // namespace oscillat
