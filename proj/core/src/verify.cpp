#include "oscillat/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "oscillat/covers.hpp"
#include "oscillat/digest.hpp"
#include "oscillat/integrate.hpp"
#include "oscillat/oscillation.hpp"

namespace oscillat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-12;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string at_cell(const IntervalSpace& space, std::size_t k) {
  return "cell " + std::to_string(k) + " x=" + num(space.cell_midpoint(k));
}

double lp_norm(const IntervalSpace& space, const PiecewiseLinear& f, double p) {
  const ExactIntegrator I(f, space.density());
  return std::pow(I.power_deviation(space.lower(), space.upper(), 0.0, p), 1.0 / p);
}

/// a / b with 0/0 = 0 and x/0 = inf.
double safe_ratio(double a, double b) {
  if (b > 0) return a / b;
  return a > 0 ? kInf : 0.0;
}

/// 𝒪 of a field over cells, with spreads at roundoff level of the field's size
/// reported as exactly 0.
double settled_oscillation(const IntervalSpace& space, const std::vector<double>& values, CellRange cells) {
  double scale = 0.0, lo = kInf, hi = -kInf;
  for (std::size_t k = cells.first; k < cells.last; ++k) {
    scale = std::max(scale, std::fabs(values[k]));
    lo = std::min(lo, values[k]);
    hi = std::max(hi, values[k]);
  }
  if (hi - lo <= 64.0 * std::numeric_limits<double>::epsilon() * scale) return 0.0;
  return field_oscillation(space, values, cells);
}

}  // namespace

void CheckReport::add_witness(std::string where, double ratio) {
  witnesses.push_back({std::move(where), ratio});
  std::stable_sort(witnesses.begin(), witnesses.end(),
                   [](const Witness& a, const Witness& b) { return a.ratio > b.ratio; });
  if (witnesses.size() > 10) witnesses.resize(10);
}

double relative_drift(double a, double b) {
  const double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

std::string describe(const PiecewiseLinear& f) {
  std::string s = "pl";
  for (std::size_t k = 0; k < f.segments(); ++k) {
    s += ';' + num(f.knots()[k]) + ',' + num(f.left()[k]) + ',' + num(f.right()[k]);
  }
  s += ';' + num(f.upper());
  return config_digest(s);
}

std::string describe(const IntervalSpace& space) {
  std::string s = "interval;" + num(space.lower()) + ';' + num(space.upper());
  for (double x : space.density().breakpoints) s += ",b" + num(x);
  for (double v : space.density().values) s += ",v" + num(v);
  s += ";nodes=" + std::to_string(space.nodes());
  for (double x : space.grid()) s += ',' + num(x);
  s += ";L=" + num(space.truncation());
  return config_digest(s);
}

// --------------------------------------------------------------- sublinearity

namespace {

template <class Space>
CheckReport sublinearity_from_fields(const Space& space, const MaximalField& mf, const MaximalField& mg,
                                     const MaximalField& msum, const MaximalField& mdiff,
                                     const std::function<std::string(std::size_t)>& where) {
  (void)space;
  CheckReport r;
  r.name = "sublinearity";
  r.threshold = kSlack;
  double worst_slack = -kInf;
  for (std::size_t k = 0; k < mf.size(); ++k) {
    if (!mf.defined(k)) continue;
    const double sub = msum.values[k] - mf.values[k] - mg.values[k];
    const double con = std::fabs(mf.values[k] - mg.values[k]) - mdiff.values[k];
    const double slack = std::max(sub, con);
    worst_slack = std::max(worst_slack, slack);
    const double ratio = std::max(safe_ratio(msum.values[k], mf.values[k] + mg.values[k]),
                                  safe_ratio(std::fabs(mf.values[k] - mg.values[k]), mdiff.values[k]));
    r.worst_ratio = std::max(r.worst_ratio, ratio);
    if (slack > kSlack || r.witnesses.size() < 10 || ratio > r.witnesses.back().ratio) r.add_witness(where(k), ratio);
  }
  r.fitted_constant = r.worst_ratio;
  r.holds = worst_slack <= kSlack;
  r.notes.push_back("worst slack " + num(worst_slack));
  return r;
}

}  // namespace

CheckReport check_sublinearity(const IntervalSpace& space, const PiecewiseLinear& f, const PiecewiseLinear& g,
                               double alpha, const IntervalFamily& family) {
  const MaximalField mf = fractional_maximal(space, f, alpha, family);
  const MaximalField mg = fractional_maximal(space, g, alpha, family);
  const MaximalField ms = fractional_maximal(space, f + g, alpha, family);
  const MaximalField md = fractional_maximal(space, f - g, alpha, family);
  CheckReport r = sublinearity_from_fields(space, mf, mg, ms, md, [&](std::size_t k) { return at_cell(space, k); });
  r.digest = config_digest("sublinearity|" + describe(space) + '|' + describe(f) + '|' + describe(g) +
                           "|alpha=" + num(alpha) + "|conv=" + to_string(family.convention()) +
                           "|r=" + num(family.r_min()) + ',' + num(family.r_max()));
  return r;
}

CheckReport check_sublinearity(const PointCloud& space, const SampledFunction& f, const SampledFunction& g,
                               double alpha, const PointFamily& family) {
  SampledFunction sum, diff;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum.values.push_back(f[i] + g[i]);
    diff.values.push_back(f[i] - g[i]);
  }
  const MaximalField mf = fractional_maximal(space, f, alpha, family);
  const MaximalField mg = fractional_maximal(space, g, alpha, family);
  const MaximalField ms = fractional_maximal(space, sum, alpha, family);
  const MaximalField md = fractional_maximal(space, diff, alpha, family);
  CheckReport r = sublinearity_from_fields(space, mf, mg, ms, md, [](std::size_t i) { return "point " + std::to_string(i); });
  std::string canon = "sublinearity-atomic|n=" + std::to_string(space.size()) + "|alpha=" + num(alpha);
  for (std::size_t i = 0; i < f.size(); ++i) canon += ',' + num(f[i]) + ':' + num(g[i]) + ':' + num(space.weight(i));
  r.digest = config_digest(canon);
  return r;
}

// ------------------------------------------------------ pointwise comparison

CheckReport check_pointwise_comparison(const IntervalSpace& space, const PiecewiseLinear& f, double alpha, double p,
                                       const IntervalFamily& family, double Q) {
  if (!(p >= 1) || !(alpha > 0)) throw std::invalid_argument("pointwise comparison needs p >= 1 and alpha > 0");
  if (p == 1.0 ? !(alpha < Q) : !(alpha * p <= Q)) throw std::invalid_argument("pointwise comparison needs alpha <= Q/p");
  const double norm = lp_norm(space, f, p);
  if (!(norm > 0)) throw std::invalid_argument("pointwise comparison needs ‖f‖_p > 0");
  const MaximalField ma = fractional_maximal(space, f, alpha, family);
  const MaximalField m0 = fractional_maximal(space, f, 0.0, family);
  const double theta = alpha * p / Q;
  CheckReport r;
  r.name = "pointwise-comparison";
  for (std::size_t k = 0; k < ma.size(); ++k) {
    if (!ma.defined(k) || !m0.defined(k)) continue;
    const double ratio = safe_ratio(ma.values[k], std::pow(norm, theta) * std::pow(m0.values[k], 1.0 - theta));
    r.worst_ratio = std::max(r.worst_ratio, ratio);
    if (r.witnesses.size() < 10 || ratio > r.witnesses.back().ratio) r.add_witness(at_cell(space, k), ratio);
  }
  r.fitted_constant = r.worst_ratio;
  r.holds = std::isfinite(r.fitted_constant);
  r.digest = config_digest("pointwise|" + describe(space) + '|' + describe(f) + "|alpha=" + num(alpha) +
                           "|p=" + num(p) + "|Q=" + num(Q) + "|conv=" + to_string(family.convention()));
  return r;
}

// ------------------------------------------------------------ operator norms

CheckReport check_operator_norms(const IntervalSpace& space, const std::vector<PiecewiseLinear>& functions,
                                 double alpha, double p, const IntervalFamily& family, double Q) {
  if (!(p >= 1)) throw std::invalid_argument("operator norms need p >= 1");
  CheckReport r;
  r.name = p == 1.0 ? "weak-type" : "strong-type";
  std::string canon = r.name + '|' + describe(space) + "|alpha=" + num(alpha) + "|p=" + num(p) + "|Q=" + num(Q);
  const double pstar = p == 1.0 ? 0.0 : conjugate_exponent(p, alpha, Q);
  if (p > 1.0 && std::isinf(pstar)) {
    r.notes.push_back("alpha * p = Q: strong-type ratio skipped");
    r.fitted_constant = std::numeric_limits<double>::quiet_NaN();
    r.holds = true;
    r.digest = config_digest(canon);
    return r;
  }
  for (std::size_t n = 0; n < functions.size(); ++n) {
    const PiecewiseLinear& f = functions[n];
    canon += '|' + describe(f);
    const double norm = lp_norm(space, f, p);
    if (!(norm > 0)) {
      r.notes.push_back("function " + std::to_string(n) + " has zero norm; excluded");
      continue;
    }
    const MaximalField M = fractional_maximal(space, f, alpha, family, Q);
    double ratio = 0.0;
    if (p == 1.0) {
      double lo = kInf, hi = 0.0;
      for (double v : M.values) {
        if (v > 0 && std::isfinite(v)) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      if (hi > 0) {
        for (std::size_t j = 0; j < 64; ++j) {
          const double t = j == 63 ? hi : lo * std::pow(hi / lo, static_cast<double>(j) / 63.0);
          double level = 0.0;
          for (std::size_t k = 0; k < M.size(); ++k) {
            if (M.values[k] > t) level += space.cell_measure(k);
          }
          ratio = std::max(ratio, t * std::pow(level, (Q - alpha) / Q) / norm);
        }
      }
    } else {
      double s = 0.0;
      for (std::size_t k = 0; k < M.size(); ++k) {
        if (M.defined(k)) s += space.cell_measure(k) * std::pow(M.values[k], pstar);
      }
      ratio = std::pow(s, 1.0 / pstar) / norm;
    }
    r.worst_ratio = std::max(r.worst_ratio, ratio);
    r.add_witness("function " + std::to_string(n), ratio);
  }
  r.fitted_constant = r.worst_ratio;
  r.holds = std::isfinite(r.fitted_constant);
  r.digest = config_digest(canon);
  return r;
}

// ------------------------------------------------------------------ BLO bound

CheckReport check_blo_bound(const IntervalSpace& space, const std::vector<PiecewiseLinear>& functions, double alpha,
                            const IntervalFamily& family, double Q) {
  CheckReport r;
  r.name = "blo-bound";
  std::string canon = "blo|" + describe(space) + "|alpha=" + num(alpha) + "|Q=" + num(Q) + "|conv=" +
                      to_string(family.convention());
  const double scale = std::pow(space.total_measure(), alpha / Q) + std::pow(diameter(space), alpha);
  const std::size_t C = space.cells();
  for (std::size_t n = 0; n < functions.size(); ++n) {
    const PiecewiseLinear& f = functions[n];
    canon += '|' + describe(f);
    const double bmo = bmo_norm(space, f, 1.0, family).value;
    if (!(bmo > 1e-14)) {
      r.notes.push_back("function " + std::to_string(n) + " is constant on the family; excluded");
      continue;
    }
    const MaximalField M = fractional_maximal(space, f, alpha, family, Q);
    if (!M.all_defined()) {
      r.notes.push_back("function " + std::to_string(n) + ": field has uncovered cells; excluded");
      continue;
    }
    std::vector<double> W(C + 1, 0.0), S(C + 1, 0.0);
    for (std::size_t k = 0; k < C; ++k) {
      W[k + 1] = W[k] + space.cell_measure(k);
      S[k + 1] = S[k] + space.cell_measure(k) * M.values[k];
    }
    const std::size_t levels = std::bit_width(C);
    std::vector<std::vector<double>> mins(levels);
    mins[0] = M.values;
    for (std::size_t l = 1; l < levels; ++l) {
      const std::size_t span = std::size_t{1} << l, half = span >> 1;
      mins[l].resize(C - span + 1);
      for (std::size_t k = 0; k + span <= C; ++k) mins[l][k] = std::min(mins[l - 1][k], mins[l - 1][k + half]);
    }
    double worst = 0.0;
    std::string worst_where;
    family.for_each([&](const FamilyInterval& m) {
      const CellRange cells = cells_within(space, m.lo, m.hi);
      if (cells.empty()) return;
      const double mass = W[cells.last] - W[cells.first];
      const double mean = (S[cells.last] - S[cells.first]) / mass;
      const std::size_t l = std::bit_width(cells.last - cells.first) - 1;
      const double lo = std::min(mins[l][cells.first], mins[l][cells.last - (std::size_t{1} << l)]);
      const double ratio = (mean - lo) / (scale * bmo);
      if (ratio > worst) {
        worst = ratio;
        worst_where = "function " + std::to_string(n) + " ball (" + num(m.lo) + ", " + num(m.hi) + ")";
      }
    });
    r.worst_ratio = std::max(r.worst_ratio, worst);
    r.add_witness(worst_where, worst);
  }
  r.fitted_constant = r.worst_ratio;
  r.holds = std::isfinite(r.fitted_constant);
  r.digest = config_digest(canon);
  return r;
}

// --------------------------------------------------------- oscillation lemmas

LemmaReport check_oscillation_lemmas(const IntervalSpace& space, const PiecewiseLinear& f, double alpha,
                                     const std::vector<double>& lambdas, const std::vector<TestBall>& balls,
                                     const IntervalFamily& family, double beta, double Q) {
  if (lambdas.empty()) throw std::invalid_argument("oscillation lemmas need at least one lambda");
  LemmaReport out;
  out.local.name = "local-oscillation";
  out.global.name = "nonlocal-oscillation";
  const double p = 2.0 * Q / (Q + alpha);
  const ExactIntegrator I(f, space.density());
  const double bmo = bmo_norm(space, f, 1.0, family).value;
  const double diam_a = std::pow(diameter(space), alpha);
  auto envelope = [&](double lambda) {
    return diam_a * (std::pow(lambda, -beta) * std::log(lambda) + std::pow(lambda, -beta)) * bmo;
  };

  std::map<double, std::vector<TestBall>> by_radius;
  for (const auto& b : balls) by_radius[b.radius].push_back(b);

  for (double lambda : lambdas) {
    for (const auto& [r, group] : by_radius) {
      const SplitField split = local_global_split(space, f, alpha, lambda, r, family, Q);
      for (const TestBall& b : group) {
        LemmaRow row;
        row.lambda = lambda;
        row.ball = b;
        const CellRange cells = cells_within(space, b.center - r, b.center + r);
        if (cells.empty()) {
          out.local.notes.push_back("ball at " + num(b.center) + " r=" + num(r) + " holds no whole cell; skipped");
          continue;
        }
        const std::string where = "lambda=" + num(lambda) + " B(" + num(b.center) + ", " + num(r) + ")";

        const double reach = 3.0 * lambda * r;
        const bool local_ok = b.center - reach >= space.lower() && b.center + reach <= space.upper();
        bool local_defined = true;
        for (std::size_t k = cells.first; k < cells.last; ++k) local_defined &= split.local.defined(k);
        if (!local_ok) {
          out.local.notes.push_back(where + ": 3λB leaves the space; skipped");
        } else if (!local_defined) {
          out.local.notes.push_back(where + ": local family misses cells; skipped");
        } else {
          row.local_oscillation = settled_oscillation(space, split.local.values, cells);
          IntervalBall big = space.interval(b.center - reach, b.center + reach);
          const double denom = std::pow(lambda, Q / p) * std::pow(space.measure(b.center - r, b.center + r), alpha / Q) *
                               p_oscillation(I, big, p);
          if (row.local_oscillation == 0.0) {
            row.local_ratio = 0.0;
          } else {
            row.local_ratio = safe_ratio(row.local_oscillation, denom);
          }
          out.local.worst_ratio = std::max(out.local.worst_ratio, row.local_ratio);
          out.local.add_witness(where, row.local_ratio);
        }

        bool global_defined = true;
        for (std::size_t k = cells.first; k < cells.last; ++k) global_defined &= split.global.defined(k);
        if (!global_defined) {
          out.global.notes.push_back(where + ": no global ball covers B; skipped");
        } else {
          row.global_oscillation = settled_oscillation(space, split.global.values, cells);
          row.envelope = envelope(lambda);
          row.global_ratio = row.global_oscillation == 0.0 ? 0.0 : safe_ratio(row.global_oscillation, row.envelope);
          out.global.worst_ratio = std::max(out.global.worst_ratio, row.global_ratio);
          out.global.add_witness(where, row.global_ratio);
        }
        out.rows.push_back(row);
      }
    }
  }

  out.local.fitted_constant = out.local.worst_ratio;
  out.local.holds = std::isfinite(out.local.fitted_constant);

  // C is the sampled envelope over every λ; the λ-by-λ comparison against the
  // constant fitted at the first λ alone is reported, not asserted.
  double C = 0.0, C_first = 0.0;
  for (const auto& row : out.rows) {
    if (std::isnan(row.global_ratio)) continue;
    C = std::max(C, row.global_ratio);
    if (row.lambda == lambdas.front()) C_first = std::max(C_first, row.global_ratio);
  }
  out.global.fitted_constant = C;
  bool ok = std::isfinite(C);
  std::size_t above_first = 0;
  for (const auto& row : out.rows) {
    if (std::isnan(row.global_ratio)) continue;
    if (row.global_oscillation > C * row.envelope * (1.0 + 1e-9)) ok = false;
    if (row.lambda != lambdas.front() && row.global_oscillation > C_first * row.envelope * (1.0 + 1e-9)) ++above_first;
  }
  out.global.notes.push_back("C fitted at lambda=" + num(lambdas.front()) + " alone: " + num(C_first) + "; " +
                             std::to_string(above_first) + " row(s) at larger lambda exceed it");
  for (std::size_t j = 1; j < lambdas.size(); ++j) {
    if (!(envelope(lambdas[j]) < envelope(lambdas[j - 1]))) {
      ok = false;
      out.global.notes.push_back("envelope does not decrease from lambda=" + num(lambdas[j - 1]) + " to " +
                                 num(lambdas[j]));
    }
  }
  out.global.holds = ok;

  std::string canon = "lemmas|" + describe(space) + '|' + describe(f) + "|alpha=" + num(alpha) + "|beta=" + num(beta) +
                      "|Q=" + num(Q);
  for (double l : lambdas) canon += ",l" + num(l);
  for (const auto& b : balls) canon += ",b" + num(b.center) + ':' + num(b.radius);
  out.local.digest = config_digest(canon + "|local");
  out.global.digest = config_digest(canon + "|global");
  return out;
}

// ------------------------------------------------------------------- Sarason

SarasonReport sarason_profile(const PointCloud& space, const SampledFunction& f, const std::vector<double>& deltas,
                              double p, SarasonOptions options) {
  for (std::size_t k = 1; k < deltas.size(); ++k) {
    if (!(deltas[k] < deltas[k - 1])) throw std::invalid_argument("sarason profile needs decreasing deltas");
  }
  SarasonReport out;
  out.check.name = "sarason";
  const double diam = diameter(space);
  const PointFamily all = PointFamily::full(space, RadiusConvention::prescribed, RadiusSampling::grid_only, options.grid_ratio);
  const double cap = options.radius_cap > 0 ? options.radius_cap : 0.5 * diam;
  const PointFamily capped = all.window(all.r_min(), cap);
  std::string canon = "sarason|n=" + std::to_string(space.size()) + "|p=" + num(p) + "|cap=" + num(cap) +
                      "|ratio=" + num(options.grid_ratio);
  for (std::size_t i = 0; i < space.size(); ++i) canon += ',' + num(f[i]) + ':' + num(space.weight(i));

  double C = 0.0;
  for (double delta : deltas) {
    canon += ",d" + num(delta);
    SarasonRow row;
    row.delta = delta;
    const SampledFunction fd = discrete_convolution(space, f, delta);
    SampledFunction diff;
    diff.values.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) diff.values[i] = f[i] - fd[i];
    row.distance = bmo_norm(space, diff, p, capped).value;
    row.omega = oscillation_modulus(space, f, std::min(7.0 * delta, all.r_max()), p, all).value;
    const double ratio = safe_ratio(row.distance, row.omega);
    C = std::max(C, ratio);
    out.check.add_witness("delta=" + num(delta), ratio);
    out.rows.push_back(row);
  }
  out.check.fitted_constant = C;
  out.check.worst_ratio = C;
  bool ok = std::isfinite(C);
  if (options.expect_decay) {
    for (std::size_t k = 1; k < out.rows.size(); ++k) {
      if (out.rows[k].distance > out.rows[k - 1].distance * (1.0 + options.decay_tolerance) + options.decay_tolerance) {
        ok = false;
        out.check.notes.push_back("distance increases at delta=" + num(out.rows[k].delta));
      }
    }
  }
  out.check.holds = ok;
  out.check.digest = config_digest(canon);
  return out;
}

}  // namespace oscillat
