#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "oscillat/family.hpp"
#include "oscillat/integrate.hpp"
#include "oscillat/space.hpp"

namespace oscillat {

/// Where a supremum was attained. Interval engine fills lo/hi; the atomic engine
/// fills center_id and the member count.
struct BallSummary {
  double center = 0.0;
  std::size_t center_id = npos;
  double radius = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double measure = 0.0;
  std::size_t members = 0;
};

struct OscillationReport {
  double value = 0.0;
  double p = 1.0;
  BallSummary argmax;
  bool found = false;  // false when the family was empty
};

struct DriftReport {
  double drift = 0.0;
  /// drift / ((log(r_outer / r_inner) + 1) · ‖f‖_BMO); NaN when no norm was supplied.
  double ratio = std::numeric_limits<double>::quiet_NaN();
};

// ------------------------------------------------------------ interval engine
//
// The ExactIntegrator overloads let loops reuse one integrator; the
// (space, f) overloads build it on the spot.

double ball_mean(const ExactIntegrator& f, const IntervalBall& ball);
double ball_mean(const IntervalSpace& space, const PiecewiseLinear& f, const IntervalBall& ball);
double p_oscillation(const ExactIntegrator& f, const IntervalBall& ball, double p);
double p_oscillation(const IntervalSpace& space, const PiecewiseLinear& f, const IntervalBall& ball, double p);
/// (mean over the ball of |f - K|^p)^{1/p}.
double mean_deviation(const ExactIntegrator& f, const IntervalBall& ball, double K, double p);

OscillationReport bmo_norm(const IntervalSpace& space, const PiecewiseLinear& f, double p, const IntervalFamily& family);
OscillationReport blo_gauge(const IntervalSpace& space, const PiecewiseLinear& f, const IntervalFamily& family);
/// ω_p(f, r): sup of 𝒪_p over family members with radius ≤ r.
OscillationReport oscillation_modulus(const IntervalSpace& space, const PiecewiseLinear& f, double r, double p,
                                      const IntervalFamily& family);
/// sup of 𝒪_p over family members with μ(B) ≤ m (the VMO_μ profile).
OscillationReport measure_modulus(const IntervalSpace& space, const PiecewiseLinear& f, double m, double p,
                                  const IntervalFamily& family);
DriftReport mean_drift(const IntervalSpace& space, const PiecewiseLinear& f, const IntervalBall& inner,
                       const IntervalBall& outer, double bmo = std::numeric_limits<double>::quiet_NaN());

// -------------------------------------------------------------- atomic engine

double ball_mean(const PointCloud& space, const SampledFunction& f, const Ball& ball);
double p_oscillation(const PointCloud& space, const SampledFunction& f, const Ball& ball, double p);

OscillationReport bmo_norm(const PointCloud& space, const SampledFunction& f, double p, const PointFamily& family);
OscillationReport blo_gauge(const PointCloud& space, const SampledFunction& f, const PointFamily& family);
OscillationReport oscillation_modulus(const PointCloud& space, const SampledFunction& f, double r, double p,
                                      const PointFamily& family);
OscillationReport measure_modulus(const PointCloud& space, const SampledFunction& f, double m, double p,
                                  const PointFamily& family);
DriftReport mean_drift(const PointCloud& space, const SampledFunction& f, const Ball& inner, const Ball& outer,
                       double bmo = std::numeric_limits<double>::quiet_NaN());

/// 𝒪_1 of a step function: values[k] on a cell of measure weights[k].
double step_oscillation(std::span<const double> weights, std::span<const double> values);

}  // namespace oscillat
