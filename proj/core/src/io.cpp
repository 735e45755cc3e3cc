#include "oscillat/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace oscillat {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) fail("'" + field + "' must be an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) fail("'" + field + "' must contain only numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<double>> csv_rows(const std::string& text, std::size_t min_columns) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    std::vector<double> row;
    bool numeric = true;
    for (const auto& f : fields) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(f, &used));
        if (used != f.size()) numeric = false;
      } catch (...) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (header && rows.empty()) {
        header = false;
        continue;
      }
      fail("line " + std::to_string(lineno) + ": non-numeric field");
    }
    header = false;
    if (row.size() < min_columns) fail("line " + std::to_string(lineno) + ": expected at least " +
                                       std::to_string(min_columns) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string extension(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return "";
  std::string e = path.substr(dot + 1);
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return e;
}

ordered_json report_json(const CheckReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["holds"] = r.holds;
  auto finite_or_null = [](double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); };
  j["worst_ratio"] = finite_or_null(r.worst_ratio);
  j["fitted_constant"] = finite_or_null(r.fitted_constant);
  j["threshold"] = finite_or_null(r.threshold);
  j["witnesses"] = ordered_json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back({{"where", w.where}, {"ratio", finite_or_null(w.ratio)}});
  j["notes"] = r.notes;
  j["digest"] = r.digest;
  return j;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) fail("write to '" + path + "' failed");
}

LoadedSpace parse_space_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("space JSON does not parse: ") + e.what());
  }
  if (!j.is_object() || !j.contains("engine")) fail("space JSON needs an 'engine' field");
  const std::string engine = j["engine"].get<std::string>();
  LoadedSpace out;
  if (engine == "interval-1d") {
    out.engine = Engine::interval_1d;
    if (!j.contains("interval")) fail("interval-1d space needs an 'interval' object");
    const json& iv = j["interval"];
    if (!iv.contains("a") || !iv.contains("b")) fail("'interval' needs 'a' and 'b'");
    const double a = iv["a"].get<double>(), b = iv["b"].get<double>();
    if (!(a < b)) fail("'interval' needs a < b");
    StepDensity w;
    if (iv.contains("density_breakpoints")) w.breakpoints = numbers(iv["density_breakpoints"], "density_breakpoints");
    if (iv.contains("density_values")) w.values = numbers(iv["density_values"], "density_values");
    if (w.values.size() != w.breakpoints.size() + 1)
      fail("'density_values' needs exactly one more entry than 'density_breakpoints'");
    std::vector<double> grid;
    if (!j.contains("grid") || j["grid"].is_number()) {
      const std::size_t n = j.contains("grid") ? j["grid"].get<std::size_t>() : 1024;
      if (n < 2) fail("'grid' needs at least two nodes");
      grid = uniform_grid(a, b, n, w.breakpoints);
    } else {
      grid = numbers(j["grid"], "grid");
      if (grid.size() < 2 || grid.front() != a || grid.back() != b) fail("'grid' must start at a and end at b");
    }
    out.interval = IntervalSpace(a, b, w, grid);
    if (j.contains("truncation")) out.interval.set_truncated(j["truncation"].get<double>());
    return out;
  }
  if (engine != "point-cloud") fail("unknown engine '" + engine + "' (expected point-cloud or interval-1d)");
  out.engine = Engine::point_cloud;
  if (!j.contains("weights")) fail("point-cloud space needs 'weights'");
  std::vector<double> weights = numbers(j["weights"], "weights");
  const std::size_t n = weights.size();
  if (!j.contains("distances")) fail("point-cloud space needs 'distances'");
  const json& d = j["distances"];
  if (d.is_string()) {
    const std::string kind = d.get<std::string>();
    if (!j.contains("points") || !j["points"].is_array() || j["points"].size() != n)
      fail("'points' must hold one coordinate entry per weight");
    if (kind == "euclidean-1d") {
      out.cloud = PointCloud::on_line(numbers(j["points"], "points"), std::move(weights));
    } else if (kind == "euclidean") {
      std::vector<std::vector<double>> coords;
      for (const auto& p : j["points"]) coords.push_back(p.is_array() ? numbers(p, "points") : std::vector<double>{p.get<double>()});
      out.cloud = PointCloud::euclidean(coords, std::move(weights));
    } else {
      fail("unknown distance kind '" + kind + "'");
    }
    return out;
  }
  std::vector<double> matrix(n * n, 0.0);
  if (d.is_array() && !d.empty() && d[0].is_array()) {
    if (d.size() != n) fail("'distances' matrix needs one row per point");
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = numbers(d[i], "distances");
      if (row.size() == n) {
        std::copy(row.begin(), row.end(), matrix.begin() + static_cast<std::ptrdiff_t>(i * n));
      } else if (row.size() == i) {
        for (std::size_t k = 0; k < i; ++k) matrix[i * n + k] = matrix[k * n + i] = row[k];
      } else {
        fail("'distances' row " + std::to_string(i) + " has the wrong length");
      }
    }
  } else {
    const auto flat = numbers(d, "distances");
    if (flat.size() == n * n) {
      matrix = flat;
    } else if (flat.size() == n * (n - 1) / 2) {
      std::size_t t = 0;
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k, ++t) matrix[i * n + k] = matrix[k * n + i] = flat[t];
    } else {
      fail("'distances' must hold n*n entries or the n(n-1)/2 lower triangle");
    }
  }
  out.cloud = PointCloud(std::move(matrix), std::move(weights));
  return out;
}

LoadedSpace parse_space_csv(const std::string& text) {
  const auto rows = csv_rows(text, 3);
  if (rows.empty()) fail("space CSV has no rows");
  const std::size_t dim = rows.front().size() - 2;
  std::vector<std::vector<double>> coords;
  std::vector<double> weights;
  for (const auto& r : rows) {
    if (r.size() != dim + 2) fail("space CSV rows must all have the same number of columns");
    coords.emplace_back(r.begin() + 1, r.end() - 1);
    weights.push_back(r.back());
  }
  LoadedSpace out;
  out.engine = Engine::point_cloud;
  if (dim == 1) {
    std::vector<double> x;
    for (const auto& c : coords) x.push_back(c[0]);
    out.cloud = PointCloud::on_line(std::move(x), std::move(weights));
  } else {
    out.cloud = PointCloud::euclidean(coords, std::move(weights));
  }
  return out;
}

LoadedSpace load_space(const std::string& path) {
  const std::string text = read_file(path);
  const std::string ext = extension(path);
  if (ext == "csv") return parse_space_csv(text);
  if (ext == "json") return parse_space_json(text);
  fail("space file '" + path + "' must end in .json or .csv");
}

PiecewiseLinear parse_piecewise_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("function JSON does not parse: ") + e.what());
  }
  if (!j.contains("knots")) fail("function JSON needs 'knots'");
  auto knots = numbers(j["knots"], "knots");
  try {
    if (j.contains("values")) return PiecewiseLinear::interpolate(std::move(knots), numbers(j["values"], "values"));
    if (j.contains("left") && j.contains("right"))
      return PiecewiseLinear(std::move(knots), numbers(j["left"], "left"), numbers(j["right"], "right"));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  fail("function JSON needs 'values' or both 'left' and 'right'");
}

PiecewiseLinear parse_piecewise_csv(const std::string& text) {
  const auto rows = csv_rows(text, 2);
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r[0]);
    y.push_back(r[1]);
  }
  try {
    return PiecewiseLinear::interpolate(std::move(x), y);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

PiecewiseLinear load_piecewise(const std::string& path) {
  const std::string text = read_file(path);
  return extension(path) == "csv" ? parse_piecewise_csv(text) : parse_piecewise_json(text);
}

SampledFunction load_sampled(const std::string& path, std::size_t expected_size) {
  const std::string text = read_file(path);
  SampledFunction f;
  if (extension(path) == "csv") {
    const auto rows = csv_rows(text, 2);
    f.values.assign(expected_size, std::numeric_limits<double>::quiet_NaN());
    for (const auto& r : rows) {
      const auto id = static_cast<std::size_t>(r[0]);
      if (r[0] < 0 || id >= expected_size) fail("function CSV names point " + std::to_string(id) + " outside the space");
      f.values[id] = r[1];
    }
  } else {
    const json j = json::parse(text);
    if (!j.contains("values")) fail("function JSON needs 'values'");
    f.values = numbers(j["values"], "values");
  }
  if (f.values.size() != expected_size) fail("function has " + std::to_string(f.values.size()) + " values, space has " +
                                            std::to_string(expected_size) + " points");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f.values[i])) fail("function value at point " + std::to_string(i) + " is missing or not finite");
  }
  return f;
}

// ---------------------------------------------------------------------- CSV

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row(header); }

CsvWriter& CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw std::invalid_argument("CSV row has the wrong number of fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ += ',';
    out_ += quote(fields[i]);
  }
  out_ += "\r\n";
  return *this;
}

std::string CsvWriter::number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string CsvWriter::quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string q = "\"";
  for (char c : field) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

// --------------------------------------------------------------------- JSON

std::string to_json(const CheckReport& report, int indent) { return report_json(report).dump(indent); }

std::string to_json(const std::vector<CheckReport>& reports, const std::string& digest, int indent) {
  ordered_json j;
  j["digest"] = digest;
  bool all = true;
  j["checks"] = ordered_json::array();
  for (const auto& r : reports) {
    j["checks"].push_back(report_json(r));
    all = all && r.holds;
  }
  j["all_hold"] = all;
  return j.dump(indent);
}

std::string to_json(const ValidationReport& report, const std::string& digest, int indent) {
  ordered_json j;
  j["digest"] = digest;
  j["usable"] = report.usable;
  j["triples_checked"] = report.triples_checked;
  j["violations"] = ordered_json::array();
  for (const auto& v : report.violations) {
    j["violations"].push_back({{"kind", v.kind}, {"witness", v.witness}, {"magnitude", v.magnitude}});
  }
  return j.dump(indent);
}

std::string to_json(const Partition& partition, const std::string& digest, int indent) {
  ordered_json j;
  j["digest"] = digest;
  j["delta"] = partition.cover.delta;
  j["centers"] = ordered_json::array();
  for (const auto& b : partition.cover.balls) j["centers"].push_back(b.center);
  j["radius"] = partition.cover.delta;
  ordered_json overlap;
  for (std::size_t k = 0; k < Cover::overlap_factors.size(); ++k)
    overlap[CsvWriter::number(Cover::overlap_factors[k])] = partition.cover.overlap[k];
  j["overlap"] = overlap;
  j["lipschitz_gauge"] = partition.lipschitz_gauge;
  j["phi"] = ordered_json::array();
  for (const auto& row : partition.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& [i, v] : row) r.push_back({i, v});
    j["phi"].push_back(r);
  }
  return j.dump(indent);
}

// ---------------------------------------------------------------------- SVG

std::string svg_plot(const std::string& title, const std::vector<PlotSeries>& series, int width, int height) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x0 < x1)) {
    x0 = 0;
    x1 = 1;
  }
  if (!(y0 < y1)) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const double L = 60, R = 20, T = 40, B = 40;
  const double W = width - L - R, H = height - T - B;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * W; };
  auto py = [&](double y) { return T + (y1 - y) / (y1 - y0) * H; };
  auto esc = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '<') o += "&lt;";
      else if (c == '>') o += "&gt;";
      else if (c == '&') o += "&amp;";
      else o += c;
    }
    return o;
  };
  char buf[160];
  std::string svg;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n", width,
                height, width, height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">", L);
  svg += buf + esc(title) + "</text>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"#444\"/>\n", L,
                T, W, H);
  svg += buf;
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0, yv = y0 + (y1 - y0) * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">%.4g</text>\n",
                  px(xv), T + H + 16, xv);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">%.4g</text>\n",
                  L - 6, py(yv) + 4, yv);
    svg += buf;
  }
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color = s.color.empty() ? palette[k % 5] : s.color;
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
      pts += buf;
    }
    svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + " points=\"" + pts + "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\" fill=\"%s\">",
                  L + W - 150, T + 16 + 16.0 * static_cast<double>(k), color.c_str());
    svg += buf + esc(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace oscillat
