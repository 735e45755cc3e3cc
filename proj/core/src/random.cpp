#include "oscillat/random.hpp"

#include <algorithm>
#include <cmath>

namespace oscillat {

PiecewiseLinear random_piecewise(SeededRng& rng, double a, double b, std::size_t segments, double lo, double hi,
                                 bool jumps) {
  segments = std::max<std::size_t>(segments, 1);
  std::vector<double> knots{a};
  for (std::size_t k = 1; k < segments; ++k) knots.push_back(rng.uniform(a, b));
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  const std::size_t n = knots.size() - 1;
  std::vector<double> left(n), right(n);
  double carry = rng.uniform(lo, hi);
  for (std::size_t k = 0; k < n; ++k) {
    left[k] = jumps && k > 0 ? rng.uniform(lo, hi) : carry;
    right[k] = rng.uniform(lo, hi);
    carry = right[k];
  }
  return PiecewiseLinear(std::move(knots), std::move(left), std::move(right));
}

IntervalSpace random_interval_space(SeededRng& rng, double a, double b, std::size_t nodes, std::size_t pieces) {
  StepDensity w;
  for (std::size_t k = 1; k < pieces; ++k) w.breakpoints.push_back(rng.uniform(a, b));
  std::sort(w.breakpoints.begin(), w.breakpoints.end());
  w.breakpoints.erase(std::unique(w.breakpoints.begin(), w.breakpoints.end()), w.breakpoints.end());
  w.values.clear();
  for (std::size_t k = 0; k <= w.breakpoints.size(); ++k) w.values.push_back(0.25 * std::pow(16.0, rng.uniform()));
  auto grid = uniform_grid(a, b, nodes, w.breakpoints);
  return IntervalSpace(a, b, std::move(w), std::move(grid));
}

}  // namespace oscillat
