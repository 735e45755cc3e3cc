#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oscillat/piecewise.hpp"
#include "oscillat/space.hpp"
#include "oscillat/verify.hpp"

namespace oscillat {

enum class ExampleName {
  vmo_not_vmomu,          // weight 1/√(n+1) on [n, n+1), tent train
  vmomu_not_vmo,          // weight n+1 on [n, n+1), tents squeezed onto [n², n² + 1/(n+1))
  unbounded_discont,      // (0, ∞) cut to (0, L), f = (1 - x)_+, f_n = f - n
  bounded_discont_M,      // (0, 2), f = (x - 1)_+, f_n = f - n, α = 0
  bounded_discont_Malpha  // same space and functions, α > 0
};

std::string to_string(ExampleName name);
/// Throws std::invalid_argument for an unknown name.
ExampleName parse_example(const std::string& name);
std::vector<std::string> example_names();

struct ExampleParams {
  std::size_t N = 1024;  // uniform grid nodes before function knots are merged in
  double L = 64.0;       // truncation length for examples on (0, ∞)
  double alpha = 0.5;    // used by bounded-discont-Malpha only
  int n = 0;             // which f_n the oracle describes (0: f itself)
};

struct NamedExample {
  ExampleName name = ExampleName::bounded_discont_M;
  ExampleParams params;
  IntervalSpace space;
  PiecewiseLinear f;
  /// Region where evaluate_oracle is defined.
  double oracle_lo = 0.0;
  double oracle_hi = 0.0;
  std::string note;

  /// f_n = f - n for the discontinuity examples; f itself otherwise.
  PiecewiseLinear function(int n) const;
  /// α the example's maximal function uses.
  double alpha() const;
};

/// Throws std::invalid_argument if N < 256 or L ≤ 1.
NamedExample build_example(ExampleName name, ExampleParams params = {});

/// Closed-form value of M^α f_n at x (n = params.n), or nullopt outside the
/// oracle's region or where no closed form is known.
std::optional<double> evaluate_oracle(const NamedExample& example, double x);

/// Unit tent: 2x on [0, 1/2), 2 - 2x on [1/2, 1).
double tent(double x);

struct ContinuityRow {
  int n = 0;
  double bmo_difference = 0.0;  // ‖f_n - f‖_BMO
  double gap = 0.0;             // 𝒪(M^α f_n - M^α f, (0, 1))
};

struct ContinuityReport {
  CheckReport check;
  std::vector<ContinuityRow> rows;
};

/// For each n: ‖f_n - f‖_BMO must be ≤ 1e-12 while 𝒪(M^α f_n - M^α f, (0,1)) ≥ floor.
ContinuityReport continuity_experiment(ExampleName name, const std::vector<int>& n_values, double alpha,
                                       ExampleParams params = {}, double floor = 0.01);

}  // namespace oscillat
