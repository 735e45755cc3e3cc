#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oscillat/geometry.hpp"
#include "oscillat/random.hpp"
#include "oscillat/space.hpp"

using namespace oscillat;

namespace {

bool has_kind(const ValidationReport& r, const std::string& kind) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

PointCloud random_cloud(SeededRng& rng, std::size_t n, std::size_t dim) {
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& c : pts[i]) c = rng.uniform();
    w[i] = rng.uniform(0.1, 2.0);
  }
  return PointCloud::euclidean(pts, w);
}

}  // namespace

TEST_CASE("balls are open and list members by distance, then index") {
  const PointCloud line = PointCloud::on_line({0.0, 1.0, 2.0, 3.0, 4.0}, {1, 1, 1, 1, 1});
  const Ball b = line.ball(2, 1.0);
  REQUIRE(b.members.size() == 1);
  CHECK(b.members[0] == 2);
  const Ball c = line.ball(2, 1.5);
  CHECK(c.members == std::vector<std::size_t>{2, 1, 3});
  CHECK(c.measure == doctest::Approx(3.0));
  CHECK(c.intrinsic_radius == doctest::Approx(1.0));
}

TEST_CASE("line fast path and matrix path resolve the same balls") {
  SeededRng rng(5);
  std::vector<double> x(60), w(60);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform(0.0, 10.0);
    w[i] = rng.uniform(0.5, 1.5);
  }
  std::sort(x.begin(), x.end());
  const PointCloud line = PointCloud::on_line(x, w);
  REQUIRE(line.is_sorted_line());
  std::vector<double> m(x.size() * x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m[i * x.size() + j] = std::fabs(x[i] - x[j]);
  const PointCloud mat(m, w);
  for (std::size_t c = 0; c < x.size(); c += 7) {
    for (double r : {0.1, 0.9, 2.5, 11.0}) {
      const Ball a = line.ball(c, r), b = mat.ball(c, r);
      std::vector<std::size_t> ma = a.members, mb = b.members;
      std::sort(ma.begin(), ma.end());
      std::sort(mb.begin(), mb.end());
      CHECK(ma == mb);
      CHECK(a.measure == doctest::Approx(b.measure).epsilon(1e-12));
    }
  }
}

TEST_CASE("a uniform 1D Lebesgue grid validates cleanly") {
  const ValidationReport r = validate_space(IntervalSpace::lebesgue(0.0, 2.0, 513));
  CHECK(r.usable);
  CHECK(r.violations.empty());
  const ValidationReport a = validate_space(atomize(IntervalSpace::lebesgue(0.0, 2.0, 129)));
  CHECK(a.usable);
  CHECK(a.violations.empty());
}

TEST_CASE("validation reports asymmetry, triangle violations and bad weights") {
  // d(0,2) = 5 > d(0,1) + d(1,2) = 2
  const PointCloud tri({0, 1, 5, 1, 0, 1, 5, 1, 0}, {1, 1, 1});
  ValidationReport r = validate_space(tri);
  CHECK_FALSE(r.usable);
  CHECK(has_kind(r, "triangle"));

  const PointCloud asym({0, 1, 2, 0}, {1, 1});
  r = validate_space(asym);
  CHECK_FALSE(r.usable);
  CHECK(has_kind(r, "symmetry"));

  const PointCloud neg({0, 1, 1, 0}, {1, -1});
  r = validate_space(neg);
  CHECK_FALSE(r.usable);
  CHECK(has_kind(r, "weight"));

  const PointCloud dup({0, 0, 0, 0}, {1, 1});
  r = validate_space(dup);
  CHECK_FALSE(r.usable);
  CHECK(has_kind(r, "separation"));
}

TEST_CASE("interval measures are exact for step densities") {
  StepDensity w;
  w.breakpoints = {1.0, 2.0};
  w.values = {1.0, 2.0, 4.0};
  const IntervalSpace s(0.0, 3.0, w, uniform_grid(0.0, 3.0, 31, w.breakpoints));
  CHECK(s.total_measure() == doctest::Approx(7.0));
  CHECK(s.measure(0.5, 2.5) == doctest::Approx(0.5 + 2.0 + 2.0));
  CHECK(s.cumulative_mass(1.5) == doctest::Approx(2.0));
  double sum = 0.0;
  for (std::size_t k = 0; k < s.cells(); ++k) sum += s.cell_measure(k);
  CHECK(sum == doctest::Approx(7.0));
  const PointCloud atoms = atomize(s);
  CHECK(atoms.total_measure() == doctest::Approx(7.0));
  CHECK(atoms.size() == s.cells());
}

TEST_CASE("diameter equals the brute-force maximum over pairs") {
  SeededRng rng(99);
  const PointCloud c = random_cloud(rng, 100, 3);
  double best = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) best = std::max(best, c.distance(i, j));
  CHECK(diameter(c) == doctest::Approx(best).epsilon(1e-15));
  CHECK(diameter(PointCloud::on_line({0.0, 5.0}, {1, 1})) == doctest::Approx(5.0));
}

TEST_CASE("doubling constant of Lebesgue is 2 and grows with a heavy atom") {
  const IntervalSpace leb = IntervalSpace::lebesgue(0.0, 2.0, 1025);
  const GeometryFit fit = estimate_doubling_constant(leb, default_radii(leb));
  CHECK(fit.exhaustive);
  CHECK(*fit.doubling_constant >= 2.0 - 1e-12);
  CHECK(*fit.doubling_constant == doctest::Approx(2.0).epsilon(0.1));

  std::vector<double> x, w;
  for (int i = 0; i < 64; ++i) {
    x.push_back(i);
    w.push_back(i == 32 ? 1e6 : 1.0);
  }
  const PointCloud heavy = PointCloud::on_line(x, w);
  CHECK(*estimate_doubling_constant(heavy, default_radii(heavy)).doubling_constant > 1e4);
  CHECK_THROWS_AS(estimate_doubling_constant(heavy, std::vector<double>{1000.0}), std::invalid_argument);
}

TEST_CASE("doubling estimate is monotone under radius refinement") {
  SeededRng rng(3);
  const PointCloud c = random_cloud(rng, 80, 2);
  const auto coarse = default_radii(c, 12);
  auto fine = coarse;
  const auto extra = default_radii(c, 40);
  fine.insert(fine.end(), extra.begin(), extra.end());
  CHECK(*estimate_doubling_constant(c, fine).doubling_constant >= *estimate_doubling_constant(c, coarse).doubling_constant);
}

TEST_CASE("lower mass bound holds on a re-scan of the sample") {
  const IntervalSpace leb = IntervalSpace::lebesgue(0.0, 2.0, 257);
  const GeometryFit one = fit_lower_mass_bound(leb, 1.0);
  CHECK(one.lmb->constant == doctest::Approx(0.5).epsilon(0.1));
  const GeometryFit two = fit_lower_mass_bound(leb, 2.0);
  CHECK(two.lmb->constant > 0.0);

  SeededRng rng(8);
  const PointCloud c = random_cloud(rng, 60, 2);
  const GeometryFit fit = fit_lower_mass_bound(c);
  REQUIRE(fit.lmb);
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (double r : fit.radii) CHECK(c.ball(x, r).measure >= fit.lmb->constant * std::pow(r, fit.lmb->exponent) * (1 - 1e-12));
  }
}

TEST_CASE("annular decay: Lebesgue gives beta 1, a heavy atom does not") {
  const IntervalSpace leb = IntervalSpace::lebesgue(0.0, 2.0, 513);
  const GeometryFit fit = fit_annular_decay(leb);
  CHECK(fit.annular->beta == 1.0);
  CHECK(fit.annular->constant == doctest::Approx(1.0).epsilon(0.1));

  std::vector<double> x, w;
  for (int i = 0; i < 41; ++i) {
    x.push_back(i);
    w.push_back(i == 20 ? 1e4 : 1.0);
  }
  const PointCloud heavy = PointCloud::on_line(x, w);
  const GeometryFit h = fit_annular_decay(heavy, 4.0);
  CHECK((h.annular->beta < 1.0 || h.annular->capped || h.annular->constant > 1.0));
}

TEST_CASE("annular fit holds on a re-scan of its own sample") {
  SeededRng rng(21);
  const PointCloud c = random_cloud(rng, 50, 2);
  const GeometryFit fit = fit_annular_decay(c, 8.0);
  const double beta = fit.annular->beta, C = fit.annular->constant;
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t J = 1; J < fit.radii.size(); ++J) {
      const double R = fit.radii[J], big = c.ball(x, R).measure;
      for (std::size_t j = 0; j < J; ++j) {
        const double r = fit.radii[j];
        const double ann = big - c.ball(x, r).measure;
        CHECK(ann <= C * std::pow((R - r) / R, beta) * big * (1 + 1e-12) + 1e-12);
      }
    }
  }
}
