#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "oscillat/covers.hpp"
#include "oscillat/digest.hpp"
#include "oscillat/family.hpp"
#include "oscillat/gallery.hpp"
#include "oscillat/geometry.hpp"
#include "oscillat/io.hpp"
#include "oscillat/maximal.hpp"
#include "oscillat/oscillation.hpp"
#include "oscillat/random.hpp"
#include "oscillat/verify.hpp"

namespace oscillat::cli {

namespace {

using nlohmann::ordered_json;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* const kSuites[] = {"all", "sublinearity", "types", "blo", "osc-lemmas", "sarason"};

std::string num(double x) { return CsvWriter::number(x); }

ordered_json finite(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

std::string default_format(Command c) {
  switch (c) {
    case Command::maximal:
    case Command::convolve:
    case Command::gallery:
      return "csv";
    default:
      return "json";
  }
}

std::string format_of(const RunConfig& c) { return c.format.empty() ? default_format(c.command) : c.format; }

std::optional<double> q_of(const RunConfig& c) {
  if (c.Q > 0) return c.Q;
  return std::nullopt;
}

LoadedSpace require_space(const RunConfig& c) {
  if (c.space_path.empty()) throw InvalidInput(to_string(c.command) + " needs --space FILE");
  LoadedSpace s = load_space(c.space_path);
  const ValidationReport v =
      s.engine == Engine::interval_1d ? validate_space(s.interval) : validate_space(s.cloud);
  if (!v.usable) {
    const auto& first = v.violations.front();
    throw InvalidInput("space '" + c.space_path + "' is not usable: " + std::to_string(v.violations.size()) +
                       " violation(s), first of kind '" + first.kind + "'; run `oscillat validate` for details");
  }
  return s;
}

IntervalFamily interval_family(const RunConfig& c, const IntervalSpace& space) {
  const RadiusConvention conv = parse_convention(c.convention);
  if (c.rmin <= 0 && c.rmax <= 0) return IntervalFamily::full(space, conv);
  const IntervalFamily full = IntervalFamily::full(space, conv);
  return IntervalFamily(space, c.rmin > 0 ? c.rmin : full.r_min(), c.rmax > 0 ? c.rmax : full.r_max(), conv);
}

PointFamily point_family(const RunConfig& c, const PointCloud& space) {
  const RadiusConvention conv = parse_convention(c.convention);
  const PointFamily full = PointFamily::full(space, conv);
  if (c.rmin <= 0 && c.rmax <= 0) return full;
  return PointFamily(space, c.rmin > 0 ? c.rmin : full.r_min(), c.rmax > 0 ? c.rmax : full.r_max(), conv);
}

std::string with_digest_line(const std::string& digest, const std::string& csv) {
  return "# config_digest=" + digest + "\r\n" + csv;
}

// ----------------------------------------------------------------- commands

int cmd_validate(const RunConfig& c, const std::string& digest, std::string& artifact) {
  if (c.space_path.empty()) throw InvalidInput("validate needs --space FILE");
  const LoadedSpace s = load_space(c.space_path);
  const ValidationReport v = s.engine == Engine::interval_1d ? validate_space(s.interval) : validate_space(s.cloud);
  artifact = to_json(v, digest) + "\n";
  return v.usable ? 0 : 2;
}

template <class Space>
ordered_json geometry_json(const Space& space, std::optional<double> Q) {
  const std::vector<double> radii = default_radii(space);
  const GeometryFit dbl = estimate_doubling_constant(space, radii);
  const GeometryFit lmb = fit_lower_mass_bound(space, Q);
  const double q = lmb.lmb ? lmb.lmb->exponent : 1.0;
  const GeometryFit rlmb = fit_relative_lower_mass_bound(space, q);
  const GeometryFit ann = fit_annular_decay(space);
  ordered_json j;
  j["doubling_constant"] = dbl.doubling_constant ? finite(*dbl.doubling_constant) : ordered_json(nullptr);
  j["doubling_exhaustive"] = dbl.exhaustive;
  j["centers_sampled"] = dbl.centers_sampled;
  j["radii"] = dbl.radii.size();
  if (lmb.lmb) j["lower_mass_bound"] = {{"Q", lmb.lmb->exponent}, {"c_L", lmb.lmb->constant}};
  if (rlmb.rlmb) j["relative_lower_mass_bound"] = {{"Q", rlmb.rlmb->exponent}, {"c", rlmb.rlmb->constant}};
  if (ann.annular)
    j["annular_decay"] = {{"beta", ann.annular->beta}, {"C_beta", ann.annular->constant}, {"capped", ann.annular->capped}};
  return j;
}

int cmd_geometry(const RunConfig& c, const std::string& digest, std::string& artifact) {
  const LoadedSpace s = require_space(c);
  ordered_json j;
  j["digest"] = digest;
  j["engine"] = s.engine == Engine::interval_1d ? "interval-1d" : "point-cloud";
  j["diameter"] = s.engine == Engine::interval_1d ? diameter(s.interval) : diameter(s.cloud);
  j["fits"] = s.engine == Engine::interval_1d ? geometry_json(s.interval, q_of(c)) : geometry_json(s.cloud, q_of(c));
  artifact = j.dump(2) + "\n";
  return 0;
}

int cmd_maximal(const RunConfig& c, const std::string& digest, std::string& artifact) {
  if (format_of(c) != "csv") throw InvalidInput("maximal writes csv only");
  const LoadedSpace s = require_space(c);
  if (c.function_path.empty()) throw InvalidInput("maximal needs --function FILE");
  if (s.engine == Engine::interval_1d) {
    const PiecewiseLinear f = load_piecewise(c.function_path);
    if (f.lower() != s.interval.lower() || f.upper() != s.interval.upper())
      throw InvalidInput("function domain does not match the space interval");
    const IntervalFamily family = interval_family(c, s.interval);
    const MaximalField field = fractional_maximal(s.interval, f, c.alpha, family, q_of(c));
    CsvWriter csv({"x", "maximal", "argmax_center", "argmax_radius"});
    for (std::size_t k = 0; k < field.size(); ++k) {
      csv.row({num(s.interval.cell_midpoint(k)), num(field.values[k]), num(field.argmax[k].center),
               num(field.argmax[k].radius)});
    }
    artifact = with_digest_line(digest, csv.str());
    return 0;
  }
  const SampledFunction f = load_sampled(c.function_path, s.cloud.size());
  const PointFamily family = point_family(c, s.cloud);
  const MaximalField field = fractional_maximal(s.cloud, f, c.alpha, family, q_of(c));
  CsvWriter csv({"point_id", "maximal", "argmax_center", "argmax_radius"});
  for (std::size_t k = 0; k < field.size(); ++k) {
    const auto& b = field.argmax[k];
    csv.row({std::to_string(k), num(field.values[k]), b.center_id == npos ? "" : std::to_string(b.center_id),
             num(b.radius)});
  }
  artifact = with_digest_line(digest, csv.str());
  return 0;
}

int cmd_oscillation(const RunConfig& c, const std::string& digest, std::string& artifact) {
  const LoadedSpace s = require_space(c);
  if (c.function_path.empty()) throw InvalidInput("oscillation needs --function FILE");
  const std::string fmt = format_of(c);
  if (fmt != "csv" && fmt != "json") throw InvalidInput("oscillation writes csv or json");
  if (s.engine == Engine::interval_1d) {
    const IntervalSpace& space = s.interval;
    const PiecewiseLinear f = load_piecewise(c.function_path);
    const IntervalFamily family = interval_family(c, space);
    const double diam = diameter(space);
    if (fmt == "csv") {
      const ExactIntegrator I(f, space.density());
      CsvWriter csv({"center", "radius", "lo", "hi", "mean", "oscillation"});
      const auto g = space.grid();
      const std::size_t stride = std::max<std::size_t>(1, g.size() / 32);
      for (double r : geometric_radii(family.r_min(), family.r_max(), 2.0)) {
        for (std::size_t k = 0; k < g.size(); k += stride) {
          const IntervalBall b = space.interval(std::max(space.lower(), g[k] - r), std::min(space.upper(), g[k] + r));
          if (!(b.measure > 0)) continue;
          csv.row({num(g[k]), num(r), num(b.lo), num(b.hi), num(ball_mean(I, b)), num(p_oscillation(I, b, c.p))});
        }
      }
      artifact = with_digest_line(digest, csv.str());
      return 0;
    }
    ordered_json j;
    j["digest"] = digest;
    j["p"] = c.p;
    j["bmo"] = finite(bmo_norm(space, f, c.p, family).value);
    j["blo"] = finite(blo_gauge(space, f, family).value);
    ordered_json omega = ordered_json::array();
    for (int k = 1; k <= 10; ++k) {
      const double r = diam * std::ldexp(1.0, -k);
      omega.push_back({{"r", r}, {"omega", finite(oscillation_modulus(space, f, r, c.p, family).value)}});
    }
    j["omega"] = omega;
    artifact = j.dump(2) + "\n";
    return 0;
  }
  const PointCloud& space = s.cloud;
  const SampledFunction f = load_sampled(c.function_path, space.size());
  const PointFamily family = point_family(c, space);
  const double diam = diameter(space);
  if (fmt == "csv") {
    CsvWriter csv({"center", "radius", "members", "mean", "oscillation"});
    const std::size_t stride = std::max<std::size_t>(1, space.size() / 32);
    for (double r : geometric_radii(family.r_min(), family.r_max(), 2.0)) {
      for (std::size_t k = 0; k < space.size(); k += stride) {
        const Ball b = space.ball(k, r);
        if (!(b.measure > 0)) continue;
        csv.row({std::to_string(k), num(r), std::to_string(b.members.size()), num(ball_mean(space, f, b)),
                 num(p_oscillation(space, f, b, c.p))});
      }
    }
    artifact = with_digest_line(digest, csv.str());
    return 0;
  }
  ordered_json j;
  j["digest"] = digest;
  j["p"] = c.p;
  j["bmo"] = finite(bmo_norm(space, f, c.p, family).value);
  j["blo"] = finite(blo_gauge(space, f, family).value);
  ordered_json omega = ordered_json::array();
  for (int k = 1; k <= 10; ++k) {
    const double r = diam * std::ldexp(1.0, -k);
    omega.push_back({{"r", r}, {"omega", finite(oscillation_modulus(space, f, r, c.p, family).value)}});
  }
  j["omega"] = omega;
  artifact = j.dump(2) + "\n";
  return 0;
}

int cmd_convolve(const RunConfig& c, const std::string& digest, std::string& artifact) {
  const LoadedSpace s = require_space(c);
  if (c.function_path.empty()) throw InvalidInput("convolve needs --function FILE");
  PointCloud cloud;
  SampledFunction f;
  if (s.engine == Engine::interval_1d) {
    cloud = atomize(s.interval);
    f = atomize(s.interval, load_piecewise(c.function_path));
  } else {
    cloud = s.cloud;
    f = load_sampled(c.function_path, cloud.size());
  }
  const Partition partition = build_partition(cloud, build_cover(cloud, c.delta));
  const SampledFunction fd = discrete_convolution(cloud, f, partition);
  const std::string fmt = format_of(c);
  if (fmt == "json") {
    artifact = to_json(partition, digest) + "\n";
    return 0;
  }
  if (fmt != "csv") throw InvalidInput("convolve writes csv or json");
  CsvWriter csv({"point_id", "f", "f_delta"});
  for (std::size_t i = 0; i < cloud.size(); ++i) csv.row({std::to_string(i), num(f[i]), num(fd[i])});
  artifact = with_digest_line(digest, csv.str());
  return 0;
}

// ------------------------------------------------------------------- verify

bool wants(const std::string& suite, const char* name) { return suite == "all" || suite == name; }

std::vector<PiecewiseLinear> battery(const RunConfig& c, const IntervalSpace& space, SeededRng& rng, std::size_t count) {
  std::vector<PiecewiseLinear> out;
  if (!c.function_path.empty()) out.push_back(load_piecewise(c.function_path));
  while (out.size() < count) {
    out.push_back(random_piecewise(rng, space.lower(), space.upper(), 6 + rng.index(10), -1.0, 1.0, out.size() % 2 == 1));
  }
  return out;
}

std::vector<CheckReport> verify_interval(const RunConfig& c, const IntervalSpace& space) {
  SeededRng rng(c.seed);
  std::vector<CheckReport> reports;
  const IntervalFamily family = interval_family(c, space);
  const double Q = c.Q > 0 ? c.Q : 1.0;
  const auto fs = battery(c, space, rng, 4);
  if (wants(c.suite, "sublinearity")) {
    for (std::size_t k = 0; k + 1 < fs.size(); k += 2)
      reports.push_back(check_sublinearity(space, fs[k], fs[k + 1], c.alpha, family));
  }
  if (wants(c.suite, "types")) {
    const double p = c.p > 1 ? c.p : 2.0;
    if (c.alpha * p < Q) reports.push_back(check_pointwise_comparison(space, fs.front(), c.alpha, p, family, Q));
    reports.push_back(check_operator_norms(space, fs, c.alpha, 1.0, family, Q));
    if (c.alpha * p < Q) reports.push_back(check_operator_norms(space, fs, c.alpha, p, family, Q));
  }
  if (wants(c.suite, "blo")) reports.push_back(check_blo_bound(space, fs, c.alpha, family, Q));
  if (wants(c.suite, "osc-lemmas")) {
    const double a = space.lower(), w = diameter(space);
    std::vector<TestBall> balls;
    for (double t : {0.375, 0.5, 0.625})
      for (double r : {w / 48.0, w / 96.0}) balls.push_back({a + t * w, r});
    const LemmaReport lemma = check_oscillation_lemmas(space, fs.front(), c.alpha, {c.lambda, 2 * c.lambda, 4 * c.lambda},
                                                       balls, family, 1.0, Q);
    reports.push_back(lemma.local);
    reports.push_back(lemma.global);
  }
  if (wants(c.suite, "sarason")) {
    const PointCloud cloud = atomize(space);
    const SampledFunction f = atomize(space, fs.front());
    const double d0 = diameter(space) / 8.0;
    std::vector<double> deltas;
    for (int k = 0; k < 4; ++k) deltas.push_back(std::ldexp(d0, -k));
    reports.push_back(sarason_profile(cloud, f, deltas, 1.0).check);
  }
  return reports;
}

std::vector<CheckReport> verify_cloud(const RunConfig& c, const PointCloud& space) {
  for (const char* only : {"types", "blo", "osc-lemmas"}) {
    if (c.suite == only) throw InvalidInput(std::string("suite '") + only + "' runs on interval-1d spaces only");
  }
  SeededRng rng(c.seed);
  auto random_values = [&] {
    SampledFunction f;
    for (std::size_t i = 0; i < space.size(); ++i) f.values.push_back(rng.uniform(-1.0, 1.0));
    return f;
  };
  SampledFunction base = c.function_path.empty() ? random_values() : load_sampled(c.function_path, space.size());
  std::vector<CheckReport> reports;
  if (wants(c.suite, "sublinearity")) {
    const PointFamily family = point_family(c, space);
    reports.push_back(check_sublinearity(space, base, random_values(), c.alpha, family));
    reports.push_back(check_sublinearity(space, random_values(), random_values(), c.alpha, family));
  }
  if (wants(c.suite, "sarason")) {
    const double d0 = diameter(space) / 8.0;
    std::vector<double> deltas;
    for (int k = 0; k < 4; ++k) deltas.push_back(std::ldexp(d0, -k));
    SarasonOptions opt;
    opt.expect_decay = false;
    reports.push_back(sarason_profile(space, base, deltas, 1.0, opt).check);
  }
  return reports;
}

int cmd_verify(const RunConfig& c, const std::string& digest, std::string& artifact) {
  if (format_of(c) != "json") throw InvalidInput("verify writes json only");
  std::vector<CheckReport> reports;
  if (c.space_path.empty()) {
    reports = verify_interval(c, IntervalSpace::lebesgue(0.0, 2.0, c.N));
  } else {
    const LoadedSpace s = require_space(c);
    reports = s.engine == Engine::interval_1d ? verify_interval(c, s.interval) : verify_cloud(c, s.cloud);
  }
  artifact = to_json(reports, digest) + "\n";
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.holds; }) ? 0 : 1;
}

// ------------------------------------------------------------------ gallery

int cmd_gallery(const RunConfig& c, const std::string& digest, std::string& artifact) {
  if (c.name.empty()) throw InvalidInput("gallery needs --name (one of: vmo-not-vmomu, vmomu-not-vmo, "
                                         "unbounded-discont, bounded-discont-M, bounded-discont-Malpha)");
  ExampleParams params;
  params.N = c.N;
  params.L = c.L;
  params.alpha = c.alpha > 0 ? c.alpha : 0.5;
  params.n = c.n;
  const NamedExample ex = build_example(parse_example(c.name), params);
  const PiecewiseLinear fn = ex.function(c.n);
  const IntervalFamily family = IntervalFamily::full(ex.space, parse_convention(c.convention));
  const MaximalField field = fractional_maximal(ex.space, fn, ex.alpha(), family);
  const std::string fmt = format_of(c);
  if (fmt == "csv") {
    CsvWriter csv({"x", "f", "maximal", "oracle"});
    for (std::size_t k = 0; k < field.size(); ++k) {
      const double x = ex.space.cell_midpoint(k);
      const auto o = evaluate_oracle(ex, x);
      csv.row({num(x), num(fn(x)), num(field.values[k]), o ? num(*o) : ""});
    }
    artifact = with_digest_line(digest, csv.str());
    return 0;
  }
  if (fmt != "svg") throw InvalidInput("gallery emits csv or svg");
  PlotSeries f{"f", {}, {}, "", false}, m{"M^a f", {}, {}, "", false}, o{"oracle", {}, {}, "", true};
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double x = ex.space.cell_midpoint(k);
    f.x.push_back(x);
    f.y.push_back(fn(x));
    m.x.push_back(x);
    m.y.push_back(field.values[k]);
    if (const auto v = evaluate_oracle(ex, x)) {
      o.x.push_back(x);
      o.y.push_back(*v);
    }
  }
  std::vector<PlotSeries> series{f, m};
  if (!o.x.empty()) series.push_back(o);
  const std::string title = c.name + " (n=" + std::to_string(c.n) + ", alpha=" + num(ex.alpha()) + ")";
  artifact = "<!-- config_digest=" + digest + " -->\n" + svg_plot(title, series);
  return 0;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::validate: return "validate";
    case Command::geometry: return "geometry";
    case Command::maximal: return "maximal";
    case Command::oscillation: return "oscillation";
    case Command::convolve: return "convolve";
    case Command::verify: return "verify";
    case Command::gallery: return "gallery";
  }
  return "unknown";
}

void check_config(const RunConfig& c) {
  auto bad = [](const std::string& m) { throw std::invalid_argument(m); };
  if (!(c.alpha >= 0) || !std::isfinite(c.alpha)) bad("--alpha must be a finite number >= 0");
  if (!(c.p >= 1) || !std::isfinite(c.p)) bad("--p must be a finite number >= 1");
  if (!(c.lambda > 1) || !std::isfinite(c.lambda)) bad("--lambda must be > 1");
  if (!(c.delta > 0) || !std::isfinite(c.delta)) bad("--delta must be > 0");
  if (c.rmin < 0 || c.rmax < 0) bad("--rmin and --rmax must be >= 0");
  if (c.rmin > 0 && c.rmax > 0 && c.rmin > c.rmax) bad("--rmin must not exceed --rmax");
  if (c.Q < 0) bad("--Q must be > 0");
  if (c.N < 2) bad("--N must be at least 2");
  if (!(c.L > 1)) bad("--L must be > 1");
  parse_convention(c.convention);
  if (std::find(std::begin(kSuites), std::end(kSuites), c.suite) == std::end(kSuites))
    bad("--suite must be one of all, sublinearity, types, blo, osc-lemmas, sarason");
  if (!c.format.empty() && c.format != "csv" && c.format != "json" && c.format != "svg")
    bad("--format must be csv, json or svg");
}

std::string canonical_config(const RunConfig& c) {
  std::ostringstream s;
  s << "command=" << to_string(c.command) << "|alpha=" << num(c.alpha) << "|p=" << num(c.p) << "|lambda=" << num(c.lambda)
    << "|delta=" << num(c.delta) << "|rmin=" << num(c.rmin) << "|rmax=" << num(c.rmax) << "|convention=" << c.convention
    << "|N=" << c.N << "|L=" << num(c.L) << "|n=" << c.n << "|Q=" << num(c.Q) << "|suite=" << c.suite
    << "|name=" << c.name << "|format=" << format_of(c) << "|seed=" << c.seed;
  if (!c.space_path.empty()) s << "|space=" << fnv1a64(read_file(c.space_path));
  if (!c.function_path.empty()) s << "|function=" << fnv1a64(read_file(c.function_path));
  return s.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string artifact;
  int status = 0;
  try {
    check_config(config);
    const std::string digest = config_digest(canonical_config(config));
    switch (config.command) {
      case Command::validate: status = cmd_validate(config, digest, artifact); break;
      case Command::geometry: status = cmd_geometry(config, digest, artifact); break;
      case Command::maximal: status = cmd_maximal(config, digest, artifact); break;
      case Command::oscillation: status = cmd_oscillation(config, digest, artifact); break;
      case Command::convolve: status = cmd_convolve(config, digest, artifact); break;
      case Command::verify: status = cmd_verify(config, digest, artifact); break;
      case Command::gallery: status = cmd_gallery(config, digest, artifact); break;
    }
  } catch (const std::exception& e) {
    err << "oscillat " << to_string(config.command) << ": " << e.what() << "\n";
    return 2;
  }
  if (config.out_path.empty()) {
    out << artifact;
  } else {
    try {
      write_file(config.out_path, artifact);
    } catch (const std::exception& e) {
      err << "oscillat " << to_string(config.command) << ": " << e.what() << "\n";
      return 2;
    }
  }
  if (status == 1) err << "oscillat verify: at least one check failed; see the report\n";
  if (status == 2 && config.command == Command::validate) err << "oscillat validate: space is not usable\n";
  return status;
}

}  // namespace oscillat::cli
