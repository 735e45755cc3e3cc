#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <functional>

#include "doctest.h"
#include "oscillat/integrate.hpp"
#include "oscillat/piecewise.hpp"
#include "oscillat/random.hpp"

using namespace oscillat;

namespace {

// Composite midpoint rule, restarted at every break so jumps never fall inside a cell.
double midpoint(const std::function<double(double)>& g, double lo, double hi, std::vector<double> breaks = {},
                int cells = 20000) {
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = std::max(lo, breaks[k]), b = std::min(hi, breaks[k + 1]);
    if (b <= a) continue;
    const double h = (b - a) / cells;
    for (int i = 0; i < cells; ++i) s += g(a + (i + 0.5) * h) * h;
  }
  return s;
}

}  // namespace

TEST_CASE("piecewise linear evaluation uses right limits and the left limit at b") {
  const PiecewiseLinear f({0.0, 1.0, 2.0}, {0.0, 5.0}, {1.0, 7.0});
  CHECK(f(0.5) == doctest::Approx(0.5));
  CHECK(f(1.0) == doctest::Approx(5.0));
  CHECK(f(1.5) == doctest::Approx(6.0));
  CHECK(f(2.0) == doctest::Approx(7.0));
}

TEST_CASE("abs inserts knots at zero crossings") {
  const PiecewiseLinear f = PiecewiseLinear::interpolate({0.0, 2.0}, std::vector<double>{-1.0, 1.0});
  const PiecewiseLinear a = f.abs();
  CHECK(a.segments() == 2);
  CHECK(a(1.0) == doctest::Approx(0.0));
  CHECK(a(0.5) == doctest::Approx(0.5));
  CHECK(a(1.5) == doctest::Approx(0.5));
}

TEST_CASE("abs_power_integral matches quadrature, including sign changes") {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    for (auto [y0, y1] : {std::pair{1.0, 2.0}, std::pair{-1.0, 3.0}, std::pair{2.0, -0.5}, std::pair{0.0, 0.0}}) {
      const double len = 0.7;
      const double exact = abs_power_integral(y0, y1, len, p);
      const double quad = midpoint([&](double t) { return std::pow(std::fabs(y0 + (y1 - y0) * t / len), p); }, 0.0, len);
      CHECK(exact == doctest::Approx(quad).epsilon(1e-8));
    }
  }
}

TEST_CASE("exact integrator agrees with quadrature against a step density") {
  SeededRng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const PiecewiseLinear f = random_piecewise(rng, 0.0, 3.0, 7, -2.0, 2.0, trial % 2 == 0);
    StepDensity w;
    w.breakpoints = {0.4, 1.7, 2.2};
    w.values = {1.0, 3.0, 0.5, 2.0};
    const ExactIntegrator I(f, w);
    const double lo = rng.uniform(0.0, 1.4), hi = rng.uniform(1.6, 3.0);
    std::vector<double> breaks(f.knots().begin(), f.knots().end());
    breaks.insert(breaks.end(), w.breakpoints.begin(), w.breakpoints.end());
    const auto fw = [&](double x) { return f(x) * w(x); };
    CHECK(I.integral(lo, hi) == doctest::Approx(midpoint(fw, lo, hi, breaks)).epsilon(1e-7));
    CHECK(I.direct_integral(lo, hi) == doctest::Approx(I.integral(lo, hi)).epsilon(1e-12));
    CHECK(I.mass(lo, hi) == doctest::Approx(midpoint([&](double x) { return w(x); }, lo, hi, breaks)).epsilon(1e-7));
    const double c = 0.3;
    const double dev = midpoint([&](double x) { return std::pow(std::fabs(f(x) - c), 1.5) * w(x); }, lo, hi, breaks);
    CHECK(I.power_deviation(lo, hi, c, 1.5) == doctest::Approx(dev).epsilon(1e-6));
  }
}

TEST_CASE("infimum and supremum scan every piece") {
  const PiecewiseLinear f = PiecewiseLinear::interpolate({0.0, 1.0, 2.0, 3.0}, std::vector<double>{0.0, 4.0, -1.0, 2.0});
  const ExactIntegrator I(f, StepDensity::lebesgue());
  CHECK(I.supremum(0.0, 3.0) == doctest::Approx(4.0));
  CHECK(I.infimum(0.0, 3.0) == doctest::Approx(-1.0));
  CHECK(I.infimum(0.0, 0.5) == doctest::Approx(0.0));
  CHECK(I.supremum(2.5, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("arithmetic on piecewise-linear functions merges knots") {
  const PiecewiseLinear f = PiecewiseLinear::interpolate({0.0, 1.0, 2.0}, std::vector<double>{0.0, 1.0, 0.0});
  const PiecewiseLinear g = PiecewiseLinear::interpolate({0.0, 0.5, 2.0}, std::vector<double>{1.0, 2.0, 0.0});
  const PiecewiseLinear s = f + g, d = f - g;
  for (double x : {0.1, 0.5, 0.9, 1.3, 1.99}) {
    CHECK(s(x) == doctest::Approx(f(x) + g(x)));
    CHECK(d(x) == doctest::Approx(f(x) - g(x)));
  }
  CHECK(f.shifted(-3.0)(0.5) == doctest::Approx(-2.5));
  CHECK(f.scaled(-2.0)(0.5) == doctest::Approx(-1.0));
}

TEST_CASE("malformed piecewise input is rejected") {
  CHECK_THROWS_AS(PiecewiseLinear({0.0, 0.0}, {1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLinear({0.0, 1.0}, {1.0, 2.0}, {1.0}), std::invalid_argument);
}
