#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oscillat/space.hpp"

namespace oscillat {

enum class RadiusConvention { prescribed, intrinsic };

std::string to_string(RadiusConvention c);
RadiusConvention parse_convention(const std::string& s);

/// One member of an interval family. `radius` is the radius the family's
/// convention assigns (used in rad(B)^α); `lo`/`hi` is the trace in (a, b).
struct FamilyInterval {
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
  double radius = 0.0;
  std::size_t lo_node = npos;
  std::size_t hi_node = npos;
  std::uint64_t key = 0;
};

/// Candidate intervals over which interval-engine suprema are taken.
///
/// intrinsic: every pair of grid nodes g_i < g_j with half-length in
/// [r_min, r_max]; the radius is the half-length.
/// prescribed: every interior node c with every radius in [r_min, r_max] from
/// {|g_j - c|} and a 1.05 geometric grid; the trace is (c-r, c+r) clipped to
/// (a, b) and the radius is r.
///
/// Enumeration is lazy. Rows (left node / center node) are independent, which
/// is what the parallel evaluators iterate over.
class IntervalFamily {
 public:
  IntervalFamily(const IntervalSpace& space, double r_min, double r_max,
                 RadiusConvention convention = RadiusConvention::intrinsic);
  /// Widest admissible family: all node pairs (intrinsic) or radii up to 2 diam (prescribed).
  static IntervalFamily full(const IntervalSpace& space, RadiusConvention convention = RadiusConvention::intrinsic);

  const IntervalSpace& space() const { return *space_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  RadiusConvention convention() const { return convention_; }
  std::optional<double> measure_cap() const { return measure_cap_; }

  /// Members with radius in [lo, hi] (intersected with the current range). May be empty.
  IntervalFamily window(double lo, double hi) const;
  /// Members with μ(trace) ≤ cap.
  IntervalFamily with_measure_cap(double cap) const;

  std::size_t rows() const;
  template <class Visit>
  void for_each_in_row(std::size_t row, Visit&& visit) const;
  template <class Visit>
  void for_each(Visit&& visit) const {
    for (std::size_t r = 0; r < rows(); ++r) for_each_in_row(r, visit);
  }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  FamilyInterval member(std::uint64_t key) const;
  IntervalBall ball(const FamilyInterval& m) const;

  const std::vector<double>& radius_grid() const { return radius_grid_; }

 private:
  IntervalFamily() = default;
  FamilyInterval prescribed_member(std::size_t c, double r, std::size_t node_j, std::uint64_t key) const;
  double snap(double x) const;

  const IntervalSpace* space_ = nullptr;
  double r_min_ = 0.0, r_max_ = 0.0;
  RadiusConvention convention_ = RadiusConvention::intrinsic;
  std::optional<double> measure_cap_;
  std::vector<double> radius_grid_;
};

enum class RadiusSampling {
  distance_midpoints,  // midpoints between consecutive distinct distances, plus the geometric grid
  grid_only,           // geometric grid only, each radius snapped to its distance-gap midpoint
};

/// Candidate balls over an atomic space: every center × candidate radii.
class PointFamily {
 public:
  PointFamily(const PointCloud& space, double r_min, double r_max,
              RadiusConvention convention = RadiusConvention::prescribed,
              RadiusSampling sampling = RadiusSampling::distance_midpoints, double grid_ratio = 1.05);
  static PointFamily full(const PointCloud& space, RadiusConvention convention = RadiusConvention::prescribed,
                          RadiusSampling sampling = RadiusSampling::distance_midpoints, double grid_ratio = 1.05);

  const PointCloud& space() const { return *space_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  RadiusConvention convention() const { return convention_; }
  RadiusSampling sampling() const { return sampling_; }

  PointFamily window(double lo, double hi) const;

  /// All balls around one center. Members of ball k are order[0 .. counts[k]).
  struct Row {
    std::size_t center = 0;
    std::vector<std::size_t> order;
    std::vector<double> dist;
    std::vector<double> radii;          // increasing
    std::vector<std::size_t> counts;    // nondecreasing
    std::vector<double> weight_radius;  // radius under the family's convention
  };
  std::size_t rows() const { return space_->size(); }
  void row(std::size_t center, Row& out) const;
  std::size_t size() const;

  const std::vector<double>& radius_grid() const { return radius_grid_; }

 private:
  PointFamily() = default;

  const PointCloud* space_ = nullptr;
  double r_min_ = 0.0, r_max_ = 0.0;
  RadiusConvention convention_ = RadiusConvention::prescribed;
  RadiusSampling sampling_ = RadiusSampling::distance_midpoints;
  std::vector<double> radius_grid_;
};

IntervalFamily enumerate_balls(const IntervalSpace& space, double r_min, double r_max,
                               RadiusConvention convention = RadiusConvention::intrinsic);
PointFamily enumerate_balls(const PointCloud& space, double r_min, double r_max,
                            RadiusConvention convention = RadiusConvention::prescribed,
                            RadiusSampling sampling = RadiusSampling::distance_midpoints);

/// Geometric radii lo, lo·ratio, ... up to and including hi.
std::vector<double> geometric_radii(double lo, double hi, double ratio);

// ------------------------------------------------------------------ inline

template <class Visit>
void IntervalFamily::for_each_in_row(std::size_t row, Visit&& visit) const {
  if (r_min_ > r_max_) return;
  const auto g = space_->grid();
  const std::size_t N = g.size();
  if (convention_ == RadiusConvention::intrinsic) {
    const std::size_t i = row;
    const double base_mass = space_->node_mass(i);
    std::size_t j0 = static_cast<std::size_t>(std::lower_bound(g.begin() + i + 1, g.end(), g[i] + 2.0 * r_min_) - g.begin());
    while (j0 > i + 1 && 0.5 * (g[j0 - 1] - g[i]) >= r_min_) --j0;
    for (std::size_t j = j0; j < N; ++j) {
      const double half = 0.5 * (g[j] - g[i]);
      if (half < r_min_) continue;
      if (half > r_max_) break;
      if (measure_cap_ && space_->node_mass(j) - base_mass > *measure_cap_) break;
      FamilyInterval m;
      m.lo = g[i];
      m.hi = g[j];
      m.center = 0.5 * (g[i] + g[j]);
      m.radius = half;
      m.lo_node = i;
      m.hi_node = j;
      m.key = (static_cast<std::uint64_t>(i) << 32) | j;
      visit(m);
    }
    return;
  }
  const std::size_t c = row + 1;
  const double x = g[c];
  // radii that put one end of the trace on a node
  for (std::size_t j = 0; j < N; ++j) {
    if (j == c) continue;
    const double r = std::fabs(g[j] - x);
    if (r < r_min_ || r > r_max_) continue;
    FamilyInterval m = prescribed_member(c, r, j, (static_cast<std::uint64_t>(c) << 32) | j);
    if (measure_cap_ && space_->measure(m.lo, m.hi) > *measure_cap_) continue;
    visit(m);
  }
  for (std::size_t k = 0; k < radius_grid_.size(); ++k) {
    const double r = radius_grid_[k];
    if (r < r_min_ || r > r_max_) continue;
    FamilyInterval m = prescribed_member(c, r, npos, (static_cast<std::uint64_t>(c) << 32) | (N + k));
    if (measure_cap_ && space_->measure(m.lo, m.hi) > *measure_cap_) continue;
    visit(m);
  }
}

}  // namespace oscillat
