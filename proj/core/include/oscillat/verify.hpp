#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "oscillat/family.hpp"
#include "oscillat/maximal.hpp"
#include "oscillat/piecewise.hpp"
#include "oscillat/space.hpp"

namespace oscillat {

struct Witness {
  std::string where;
  double ratio = 0.0;
};

/// Outcome of one numerical check. `holds` is the check's own contract; the
/// fitted constant is the sampled envelope that replaces a non-explicit C.
struct CheckReport {
  std::string name;
  bool holds = true;
  double worst_ratio = 0.0;
  double fitted_constant = 0.0;
  double threshold = std::numeric_limits<double>::infinity();
  std::vector<Witness> witnesses;  // at most 10, ratio descending
  std::vector<std::string> notes;
  std::string digest;

  void add_witness(std::string where, double ratio);
};

/// |a - b| / max(|a|, |b|); 0 when both vanish.
double relative_drift(double a, double b);

/// Canonical text of a piecewise-linear function for config digests.
std::string describe(const PiecewiseLinear& f);
std::string describe(const IntervalSpace& space);

/// M^α(f+g) ≤ M^α f + M^α g and |M^α f - M^α g| ≤ M^α(f-g) at every cell, slack ≤ 1e-12.
CheckReport check_sublinearity(const IntervalSpace& space, const PiecewiseLinear& f, const PiecewiseLinear& g,
                               double alpha, const IntervalFamily& family);
CheckReport check_sublinearity(const PointCloud& space, const SampledFunction& f, const SampledFunction& g,
                               double alpha, const PointFamily& family);

/// max over cells of M^α f / (‖f‖_p^{αp/Q} (Mf)^{1-αp/Q}).
CheckReport check_pointwise_comparison(const IntervalSpace& space, const PiecewiseLinear& f, double alpha, double p,
                                       const IntervalFamily& family, double Q = 1.0);

/// p = 1: sup over 64 log-spaced t of t μ{M^α f > t}^{(Q-α)/Q} / ‖f‖_1.
/// p > 1: ‖M^α f‖_{p*} / ‖f‖_p. Maximum over the function set.
CheckReport check_operator_norms(const IntervalSpace& space, const std::vector<PiecewiseLinear>& functions,
                                 double alpha, double p, const IntervalFamily& family, double Q = 1.0);

/// max over family balls B and functions of
/// (mean_B M^α f - min_B M^α f) / ((μ(X)^{α/Q} + diam^α) ‖f‖_BMO).
CheckReport check_blo_bound(const IntervalSpace& space, const std::vector<PiecewiseLinear>& functions, double alpha,
                            const IntervalFamily& family, double Q = 1.0);

struct TestBall {
  double center = 0.0;
  double radius = 0.0;
};

struct LemmaRow {
  double lambda = 0.0;
  TestBall ball;
  double local_oscillation = std::numeric_limits<double>::quiet_NaN();
  double local_ratio = std::numeric_limits<double>::quiet_NaN();
  double global_oscillation = std::numeric_limits<double>::quiet_NaN();
  double envelope = std::numeric_limits<double>::quiet_NaN();  // diam^α (λ^{-β} log λ + λ^{-β}) ‖f‖_BMO
  double global_ratio = std::numeric_limits<double>::quiet_NaN();
};

struct LemmaReport {
  CheckReport local;
  CheckReport global;
  std::vector<LemmaRow> rows;
};

/// Local part: 𝒪(M^α_loc f, B) / (λ^{Q/p} μ(B)^{α/Q} 𝒪_p(f, 3λB)) with p = 2Q/(Q+α);
/// balls whose 3λB leaves (a, b) are skipped. Global part: 𝒪(M^α_glob f, B) over
/// the envelope; C is the largest ratio over every λ, and the envelope must
/// decrease in λ. Spreads at roundoff level count as zero oscillation.
LemmaReport check_oscillation_lemmas(const IntervalSpace& space, const PiecewiseLinear& f, double alpha,
                                     const std::vector<double>& lambdas, const std::vector<TestBall>& balls,
                                     const IntervalFamily& family, double beta = 1.0, double Q = 1.0);

struct SarasonRow {
  double delta = 0.0;
  double distance = 0.0;  // ‖f - f_δ‖_BMO^p
  double omega = 0.0;     // ω_p(f, 7δ)
};

struct SarasonReport {
  CheckReport check;
  std::vector<SarasonRow> rows;
};

struct SarasonOptions {
  /// Largest radius in the family used for ‖f - f_δ‖_BMO (0: diam / 2).
  double radius_cap = 0.0;
  double grid_ratio = 1.1;
  /// Require the distances to decrease (uniformly continuous inputs).
  bool expect_decay = true;
  double decay_tolerance = 1e-9;
};

/// For each δ (decreasing): ‖f - f_δ‖_BMO^p and ω_p(f, 7δ). The fitted constant is
/// max distance / ω.
SarasonReport sarason_profile(const PointCloud& space, const SampledFunction& f, const std::vector<double>& deltas,
                              double p, SarasonOptions options = {});

}  // namespace oscillat
