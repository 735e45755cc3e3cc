#pragma once

#include <cstddef>
#include <vector>

#include "oscillat/piecewise.hpp"

namespace oscillat {

/// ∫_0^len |y(t)|^p dt for y linear from y0 to y1 on [0, len]. Closed form; no quadrature.
double abs_power_integral(double y0, double y1, double len, double p);

/// Exact integrals of a piecewise-linear f against a step density w on any
/// subinterval of (a, b).
///
/// The knots of f and the breakpoints of w are merged into elementary pieces on
/// which f is linear and w constant, so every integral below is a closed form.
/// `mass`/`integral` use prefix sums (O(log P)); the `direct_*` variants and
/// `power_deviation` sum piece by piece in left-to-right order (O(pieces)).
class ExactIntegrator {
 public:
  ExactIntegrator(const PiecewiseLinear& f, const StepDensity& density);

  double lower() const { return u_.front(); }
  double upper() const { return u_.back(); }
  std::size_t pieces() const { return w_.size(); }

  double cumulative_mass(double x) const;
  double cumulative_integral(double x) const;
  double mass(double lo, double hi) const { return cumulative_mass(hi) - cumulative_mass(lo); }
  double integral(double lo, double hi) const { return cumulative_integral(hi) - cumulative_integral(lo); }

  double direct_mass(double lo, double hi) const;
  double direct_integral(double lo, double hi) const;
  /// ∫_{(lo,hi)} |f - c|^p w.
  double power_deviation(double lo, double hi, double c, double p) const;

  /// Essential infimum / supremum of f over (lo, hi).
  double infimum(double lo, double hi) const;
  double supremum(double lo, double hi) const;

  /// Calls visit(x0, x1, y0, y1, w) for each elementary piece clipped to (lo, hi), left to right.
  template <class Visit>
  void for_pieces(double lo, double hi, Visit&& visit) const {
    if (!(lo < hi)) return;
    std::size_t k = piece_at(lo);
    for (; k < w_.size() && u_[k] < hi; ++k) {
      const double x0 = lo > u_[k] ? lo : u_[k];
      const double x1 = hi < u_[k + 1] ? hi : u_[k + 1];
      if (x1 <= x0) continue;
      visit(x0, x1, value_in(k, x0), value_in(k, x1), w_[k]);
    }
  }

 private:
  std::size_t piece_at(double x) const;
  double value_in(std::size_t k, double x) const;
  double range_min(std::size_t first, std::size_t last) const;
  double range_max(std::size_t first, std::size_t last) const;

  std::vector<double> u_;
  std::vector<double> y0_, y1_, w_;
  std::vector<double> cum_mass_, cum_int_;
  std::vector<std::vector<double>> min_table_, max_table_;
};

}  // namespace oscillat
