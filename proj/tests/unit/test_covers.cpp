#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oscillat/covers.hpp"
#include "oscillat/random.hpp"

using namespace oscillat;

namespace {

PointCloud plane_cloud(std::uint64_t seed, std::size_t n) {
  SeededRng rng(seed);
  std::vector<std::vector<double>> pts(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)};
    w[i] = rng.uniform(0.5, 2.0);
  }
  return PointCloud::euclidean(pts, w);
}

}  // namespace

TEST_CASE("cover centers are separated, maximal, and cover every point") {
  const PointCloud c = plane_cloud(1, 300);
  for (double delta : {0.2, 0.5, 1.0}) {
    const Cover cov = build_cover(c, delta);
    const double sep = 0.4 * delta;
    for (std::size_t i = 0; i < cov.balls.size(); ++i)
      for (std::size_t j = i + 1; j < cov.balls.size(); ++j)
        CHECK(c.distance(cov.balls[i].center, cov.balls[j].center) >= sep);
    for (std::size_t x = 0; x < c.size(); ++x) {
      double nearest = INFINITY;
      for (const Ball& b : cov.balls) nearest = std::min(nearest, c.distance(x, b.center));
      CHECK(nearest < sep);  // maximality: no point could be added as a new center
      CHECK(nearest < delta);
    }
    // fifth-balls are disjoint because centers are 2δ/5 apart
    for (std::size_t x = 0; x < c.size(); ++x) {
      int hits = 0;
      for (const Ball& b : cov.balls) hits += c.distance(x, b.center) < delta / 5.0;
      CHECK(hits <= 1);
    }
    CHECK(cov.overlap_for(1.0) >= 1);
    CHECK(cov.overlap_for(7.0) >= cov.overlap_for(2.0));
  }
}

TEST_CASE("overlap counts agree with a direct count") {
  const PointCloud c = plane_cloud(2, 150);
  const Cover cov = build_cover(c, 0.6);
  for (std::size_t j = 0; j < Cover::overlap_factors.size(); ++j) {
    const double K = Cover::overlap_factors[j];
    std::size_t worst = 0;
    for (std::size_t x = 0; x < c.size(); ++x) {
      std::size_t hits = 0;
      for (const Ball& b : cov.balls) hits += c.distance(x, b.center) < K * cov.delta;
      worst = std::max(worst, hits);
    }
    CHECK(cov.overlap[j] == worst);
  }
}

TEST_CASE("partition of unity sums to one and matches the bump formula") {
  const PointCloud c = plane_cloud(3, 200);
  const Cover cov = build_cover(c, 0.5);
  const Partition part = build_partition(c, cov);
  for (std::size_t x = 0; x < c.size(); ++x) {
    double sum = 0.0, psi_sum = 0.0;
    for (const Ball& b : cov.balls) psi_sum += std::clamp(2.0 - c.distance(x, b.center) / cov.delta, 0.0, 1.0);
    for (auto [i, phi] : part.rows[x]) {
      sum += phi;
      const double psi = std::clamp(2.0 - c.distance(x, cov.balls[i].center) / cov.delta, 0.0, 1.0);
      CHECK(phi == doctest::Approx(psi / psi_sum).epsilon(1e-12));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("partition Lipschitz gauge matches a brute-force scan") {
  const PointCloud c = plane_cloud(4, 80);
  const Cover cov = build_cover(c, 0.7);
  const Partition part = build_partition(c, cov);
  std::vector<std::vector<double>> phi(cov.balls.size(), std::vector<double>(c.size(), 0.0));
  for (std::size_t x = 0; x < c.size(); ++x)
    for (auto [i, v] : part.rows[x]) phi[i][x] = v;
  double best = 0.0;
  for (const auto& row : phi)
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < c.size(); ++y) {
        const double d = c.distance(x, y);
        if (d > 0 && d < cov.delta) best = std::max(best, std::fabs(row[x] - row[y]) / d);
      }
  CHECK(part.lipschitz_gauge == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("convolution reproduces constants and averages over ball means") {
  const PointCloud c = plane_cloud(5, 120);
  SampledFunction k;
  k.values.assign(c.size(), -2.5);
  const SampledFunction kd = discrete_convolution(c, k, 0.6);
  for (double v : kd.values) CHECK(v == doctest::Approx(-2.5).epsilon(1e-14));

  SampledFunction f;
  SeededRng rng(6);
  for (std::size_t i = 0; i < c.size(); ++i) f.values.push_back(rng.uniform(-1.0, 1.0));
  const Partition part = build_partition(c, build_cover(c, 0.6));
  const SampledFunction fd = discrete_convolution(c, f, part);
  for (std::size_t x = 0; x < c.size(); x += 13) {
    double expect = 0.0;
    for (auto [i, phi] : part.rows[x]) {
      const Ball& b = part.cover.balls[i];
      double m = 0.0, s = 0.0;
      for (auto y : b.members) {
        m += c.weight(y);
        s += c.weight(y) * f[y];
      }
      expect += phi * s / m;
    }
    CHECK(fd[x] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("Lipschitz gauge of a sampled function") {
  const PointCloud line = PointCloud::on_line({0.0, 1.0, 3.0, 3.5}, {1, 1, 1, 1});
  SampledFunction g;
  g.values = {0.0, 1.0, 1.5, 3.0};
  CHECK(lipschitz_gauge(line, g, 10.0).value == doctest::Approx(3.0));
  CHECK(lipschitz_gauge(line, g, 1.01).value == doctest::Approx(3.0));
  const GaugeResult none = lipschitz_gauge(line, g, 0.4);
  CHECK(none.no_pairs);
}
