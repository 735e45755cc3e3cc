#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oscillat {

/// Piecewise-constant density on (a, b).
///
/// `breakpoints` are strictly increasing points inside (a, b); `values[k]` is the
/// density on the k-th piece, so values.size() == breakpoints.size() + 1.
struct StepDensity {
  std::vector<double> breakpoints;
  std::vector<double> values{1.0};

  static StepDensity lebesgue() { return {}; }

  /// Density at x (right-continuous at breakpoints).
  double operator()(double x) const;
  /// Index of the piece containing x, using the same right-continuous rule.
  std::size_t piece_of(double x) const;
};

/// Piecewise-linear function on [a, b], possibly discontinuous at knots.
///
/// Segment k spans (knots[k], knots[k+1]) and runs linearly from left[k] at its
/// left end to right[k] at its right end. Point values are right limits, except
/// at b where the left limit is used.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> knots, std::vector<double> left, std::vector<double> right);

  /// Continuous interpolant through (knots[k], values[k]).
  static PiecewiseLinear interpolate(std::vector<double> knots, std::span<const double> values);
  /// Step function taking levels[k] on segment k.
  static PiecewiseLinear step(std::vector<double> knots, std::span<const double> levels);
  static PiecewiseLinear constant(double a, double b, double c);

  double lower() const { return knots_.front(); }
  double upper() const { return knots_.back(); }
  std::size_t segments() const { return left_.size(); }
  std::span<const double> knots() const { return knots_; }
  std::span<const double> left() const { return left_; }
  std::span<const double> right() const { return right_; }

  double operator()(double x) const;
  /// Value of segment k's linear piece at x (x is clamped into the segment).
  double on_segment(std::size_t k, double x) const;
  /// Segment containing x: knots[k] <= x < knots[k+1] (last segment for x = b).
  std::size_t segment_of(double x) const;

  /// Same function with extra knots inserted (values unchanged).
  PiecewiseLinear refined(std::span<const double> extra) const;
  /// |f|, with knots added at interior zero crossings so the result stays piecewise linear.
  PiecewiseLinear abs() const;
  PiecewiseLinear shifted(double c) const;
  PiecewiseLinear scaled(double c) const;

  friend PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g);
  friend PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g);

 private:
  std::vector<double> knots_;
  std::vector<double> left_;
  std::vector<double> right_;
};

/// Sorted union of two knot sets (exact duplicates removed).
std::vector<double> merge_knots(std::span<const double> a, std::span<const double> b);

}  // namespace oscillat
