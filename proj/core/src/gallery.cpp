#include "oscillat/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oscillat/digest.hpp"
#include "oscillat/family.hpp"
#include "oscillat/maximal.hpp"
#include "oscillat/oscillation.hpp"

namespace oscillat {

namespace {

struct NameEntry {
  ExampleName name;
  const char* text;
};

constexpr NameEntry kNames[] = {
    {ExampleName::vmo_not_vmomu, "vmo-not-vmomu"},
    {ExampleName::vmomu_not_vmo, "vmomu-not-vmo"},
    {ExampleName::unbounded_discont, "unbounded-discont"},
    {ExampleName::bounded_discont_M, "bounded-discont-M"},
    {ExampleName::bounded_discont_Malpha, "bounded-discont-Malpha"},
};

bool is_discontinuity_example(ExampleName n) {
  return n == ExampleName::unbounded_discont || n == ExampleName::bounded_discont_M ||
         n == ExampleName::bounded_discont_Malpha;
}

}  // namespace

std::string to_string(ExampleName name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.text;
  }
  return "unknown";
}

ExampleName parse_example(const std::string& name) {
  for (const auto& e : kNames) {
    if (name == e.text) return e.name;
  }
  throw std::invalid_argument("unknown example '" + name + "'");
}

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (const auto& e : kNames) out.emplace_back(e.text);
  return out;
}

double tent(double x) { return x < 0.5 ? 2.0 * x : 2.0 - 2.0 * x; }

PiecewiseLinear NamedExample::function(int n) const {
  if (n == 0 || !is_discontinuity_example(name)) return f;
  return f.shifted(-static_cast<double>(n));
}

double NamedExample::alpha() const { return name == ExampleName::bounded_discont_Malpha ? params.alpha : 0.0; }

NamedExample build_example(ExampleName name, ExampleParams params) {
  if (params.N < 256) throw std::invalid_argument("examples need a grid of at least 256 nodes");
  NamedExample ex;
  ex.name = name;
  ex.params = params;
  const double L = params.L;
  const bool on_ray = name == ExampleName::vmo_not_vmomu || name == ExampleName::vmomu_not_vmo ||
                      name == ExampleName::unbounded_discont;
  if (on_ray && !(L > 1.0 && L == std::floor(L))) throw std::invalid_argument("truncation L must be an integer > 1");

  switch (name) {
    case ExampleName::vmo_not_vmomu: {
      StepDensity w;
      for (int k = 1; k < static_cast<int>(L); ++k) w.breakpoints.push_back(k);
      w.values.clear();
      for (int k = 0; k < static_cast<int>(L); ++k) w.values.push_back(1.0 / std::sqrt(k + 1.0));
      std::vector<double> knots, values;
      for (int k = 0; k < static_cast<int>(L); ++k) {
        knots.push_back(k);
        values.push_back(0.0);
        knots.push_back(k + 0.5);
        values.push_back(1.0);
      }
      knots.push_back(L);
      values.push_back(0.0);
      ex.f = PiecewiseLinear::interpolate(knots, values);
      ex.space = IntervalSpace(0.0, L, w, uniform_grid(0.0, L, params.N, knots));
      ex.space.set_truncated(L);
      ex.note = "ray (0, inf) cut to (0, L); every I_n with n < L is kept whole";
      break;
    }
    case ExampleName::vmomu_not_vmo: {
      StepDensity w;
      for (int k = 1; k < static_cast<int>(L); ++k) w.breakpoints.push_back(k);
      w.values.clear();
      for (int k = 0; k < static_cast<int>(L); ++k) w.values.push_back(k + 1.0);
      std::vector<double> knots{0.0}, values{0.0};
      for (int n = 1; static_cast<double>(n) * n < L; ++n) {
        const double s = static_cast<double>(n) * n, len = 1.0 / (n + 1.0);
        if (s + len > L) break;
        if (s > knots.back()) {
          knots.push_back(s);
          values.push_back(0.0);
        }
        knots.push_back(s + 0.5 * len);
        values.push_back(1.0);
        knots.push_back(s + len);
        values.push_back(0.0);
      }
      knots.push_back(L);
      values.push_back(0.0);
      ex.f = PiecewiseLinear::interpolate(knots, values);
      std::vector<double> extra = knots;
      extra.insert(extra.end(), w.breakpoints.begin(), w.breakpoints.end());
      std::sort(extra.begin(), extra.end());
      ex.space = IntervalSpace(0.0, L, w, uniform_grid(0.0, L, params.N, extra));
      ex.space.set_truncated(L);
      ex.note = "ray (0, inf) cut to (0, L); tents on I'_{n^2} for n^2 + 1/(n+1) <= L";
      break;
    }
    case ExampleName::unbounded_discont: {
      const std::vector<double> knots{0.0, 1.0, L};
      ex.f = PiecewiseLinear(knots, {1.0, 0.0}, {0.0, 0.0});
      ex.space = IntervalSpace(0.0, L, StepDensity::lebesgue(), uniform_grid(0.0, L, params.N, knots));
      ex.space.set_truncated(L);
      ex.oracle_lo = 0.0;
      ex.oracle_hi = L;
      ex.note = "ray (0, inf) cut to (0, L); M f_n drops from n to n - (1-x)^2 / (2(L-x)) <= n - 1/(2L) on (0, 1)";
      break;
    }
    case ExampleName::bounded_discont_M:
    case ExampleName::bounded_discont_Malpha: {
      const std::vector<double> knots{0.0, 1.0, 2.0};
      ex.f = PiecewiseLinear(knots, {0.0, 0.0}, {0.0, 1.0});
      ex.space = IntervalSpace(0.0, 2.0, StepDensity::lebesgue(), uniform_grid(0.0, 2.0, params.N, knots));
      ex.oracle_lo = 0.0;
      ex.oracle_hi = 1.0;
      break;
    }
  }
  return ex;
}

std::optional<double> evaluate_oracle(const NamedExample& ex, double x) {
  if (!(x > ex.oracle_lo && x < ex.oracle_hi)) return std::nullopt;
  const int n = ex.params.n;
  switch (ex.name) {
    case ExampleName::unbounded_discont: {
      const double L = ex.params.L;
      if (n == 0) return x < 1.0 ? 1.0 - 0.5 * x : 1.0 / (2.0 * x);
      if (n < 0) return std::nullopt;
      return x < 1.0 ? n - (1.0 - x) * (1.0 - x) / (2.0 * (L - x)) : static_cast<double>(n);
    }
    case ExampleName::bounded_discont_M:
      if (n == 0) return 1.0 / (2.0 * (2.0 - x));
      if (n > 0) return static_cast<double>(n);
      return std::nullopt;
    case ExampleName::bounded_discont_Malpha: {
      const double a = ex.params.alpha;
      if (n == 0) return 1.0 / (std::pow(2.0, a + 1.0) * std::pow(2.0 - x, 1.0 - a));
      if (a > 0 && n > 1.0 / a) return n - 0.25;
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

ContinuityReport continuity_experiment(ExampleName name, const std::vector<int>& n_values, double alpha,
                                       ExampleParams params, double floor) {
  if (!is_discontinuity_example(name))
    throw std::invalid_argument("continuity experiments run on the discontinuity examples only");
  params.alpha = alpha;
  const NamedExample ex = build_example(name, params);
  const IntervalFamily family = IntervalFamily::full(ex.space);
  const MaximalField base = fractional_maximal(ex.space, ex.f, alpha, family);
  const CellRange unit = cells_within(ex.space, 0.0, 1.0);

  ContinuityReport out;
  out.check.name = "continuity-" + to_string(name);
  out.check.threshold = floor;
  bool ok = true;
  double smallest_gap = std::numeric_limits<double>::infinity();
  std::string canon = out.check.name + "|N=" + std::to_string(params.N) + "|L=" + std::to_string(params.L) +
                      "|alpha=" + std::to_string(alpha) + "|floor=" + std::to_string(floor);
  for (int n : n_values) {
    canon += ",n" + std::to_string(n);
    ContinuityRow row;
    row.n = n;
    const PiecewiseLinear fn = ex.function(n);
    row.bmo_difference = bmo_norm(ex.space, fn - ex.f, 1.0, family).value;
    const MaximalField Mn = fractional_maximal(ex.space, fn, alpha, family);
    std::vector<double> diff(ex.space.cells());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = Mn.values[k] - base.values[k];
    row.gap = field_oscillation(ex.space, diff, unit);
    smallest_gap = std::min(smallest_gap, row.gap);
    if (row.bmo_difference > 1e-12) {
      ok = false;
      out.check.notes.push_back("n=" + std::to_string(n) + ": ‖f_n - f‖_BMO above 1e-12");
    }
    if (row.gap < floor) {
      ok = false;
      out.check.notes.push_back("n=" + std::to_string(n) + ": oscillation gap below floor");
    }
    out.check.add_witness("n=" + std::to_string(n), row.gap);
    out.rows.push_back(row);
  }
  out.check.holds = ok;
  out.check.fitted_constant = smallest_gap;
  out.check.worst_ratio = smallest_gap;
  out.check.digest = config_digest(canon);
  return out;
}

}  // namespace oscillat
