#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oscillat/covers.hpp"
#include "oscillat/gallery.hpp"
#include "oscillat/maximal.hpp"
#include "oscillat/oscillation.hpp"
#include "oscillat/piecewise.hpp"
#include "oscillat/space.hpp"
#include "oscillat/verify.hpp"

namespace oscillat {

/// A space read from disk: exactly one of the two engines is populated.
struct LoadedSpace {
  Engine engine = Engine::interval_1d;
  PointCloud cloud;
  IntervalSpace interval;
};

/// JSON space document:
///   {"engine": "point-cloud" | "interval-1d",
///    "points": [...], "weights": [...],
///    "distances": [lower triangle] | [[row], ...] | "euclidean-1d" | "euclidean",
///    "interval": {"a", "b", "density_breakpoints", "density_values"},
///    "grid": N | [nodes], "truncation": L}
/// Throws std::runtime_error with a message naming the offending field.
LoadedSpace parse_space_json(const std::string& text);
/// CSV: header then rows point_id, coordinate..., weight (Euclidean point cloud).
LoadedSpace parse_space_csv(const std::string& text);
/// Dispatches on the file extension (.json or .csv).
LoadedSpace load_space(const std::string& path);

/// Interval-engine function: JSON {"knots": [...], "values": [...]} (continuous)
/// or {"knots", "left", "right"}; CSV rows x, value (continuous interpolant).
PiecewiseLinear parse_piecewise_json(const std::string& text);
PiecewiseLinear parse_piecewise_csv(const std::string& text);
PiecewiseLinear load_piecewise(const std::string& path);
/// Atomic function: JSON {"values": [...]} or CSV rows point_id, value.
SampledFunction load_sampled(const std::string& path, std::size_t expected_size);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// RFC-4180 CSV: fields with commas, quotes or line breaks are quoted; numbers use %.17g.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& row(const std::vector<std::string>& fields);
  std::string str() const { return out_; }

  static std::string number(double x);
  static std::string quote(const std::string& field);

 private:
  std::size_t columns_;
  std::string out_;
};

std::string to_json(const CheckReport& report, int indent = 2);
std::string to_json(const std::vector<CheckReport>& reports, const std::string& digest, int indent = 2);
std::string to_json(const ValidationReport& report, const std::string& digest, int indent = 2);
std::string to_json(const Partition& partition, const std::string& digest, int indent = 2);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;
  bool dashed = false;
};

/// Line plot as a self-contained SVG document; no timestamps.
std::string svg_plot(const std::string& title, const std::vector<PlotSeries>& series, int width = 720, int height = 420);

}  // namespace oscillat
