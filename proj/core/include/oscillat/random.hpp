#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "oscillat/piecewise.hpp"
#include "oscillat/space.hpp"

namespace oscillat {

/// Seeded generator with platform-independent output. std::mt19937_64 is fully
/// specified by the standard; the distributions are not, so we map bits ourselves.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

/// Random piecewise-linear function on [a, b] with `segments` pieces and values
/// in [lo, hi]. With `jumps`, each interior knot gets an independent right value.
PiecewiseLinear random_piecewise(SeededRng& rng, double a, double b, std::size_t segments, double lo = -1.0,
                                 double hi = 1.0, bool jumps = false);

/// Interval (a, b) with a random step density (values in [0.25, 4]) and a
/// uniform grid of `nodes` nodes merged with the density breakpoints.
IntervalSpace random_interval_space(SeededRng& rng, double a, double b, std::size_t nodes, std::size_t pieces = 6);

}  // namespace oscillat
