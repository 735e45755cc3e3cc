#include "oscillat/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "oscillat/parallel.hpp"

namespace oscillat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("oscillation exponent p must satisfy 1 <= p < inf");
}

struct Candidate {
  double value = kNegInf;
  BallSummary ball;
  bool found = false;
};

/// Larger value wins; ties go to the smaller radius, then the lower center.
bool better(const Candidate& a, const Candidate& b) {
  if (!a.found) return false;
  if (!b.found) return true;
  if (a.value != b.value) return a.value > b.value;
  if (a.ball.radius != b.ball.radius) return a.ball.radius < b.ball.radius;
  return a.ball.center < b.ball.center;
}

OscillationReport to_report(const std::vector<Candidate>& rows, double p) {
  Candidate best;
  for (const auto& c : rows) {
    if (better(c, best)) best = c;
  }
  OscillationReport r;
  r.p = p;
  r.found = best.found;
  if (best.found) {
    r.value = best.value;
    r.argmax = best.ball;
  }
  return r;
}

struct MassIntegral {
  double mass = 0.0;
  double integral = 0.0;
};

MassIntegral mass_integral(const ExactIntegrator& f, double lo, double hi) {
  MassIntegral m;
  f.for_pieces(lo, hi, [&](double x0, double x1, double y0, double y1, double w) {
    const double len = x1 - x0;
    m.mass += w * len;
    m.integral += w * len * 0.5 * (y0 + y1);
  });
  return m;
}

template <class Score>
OscillationReport interval_sup(const IntervalFamily& family, double p, Score score) {
  std::vector<Candidate> rows(family.rows());
  parallel_for(rows.size(), [&](std::size_t row) {
    Candidate& best = rows[row];
    family.for_each_in_row(row, [&](const FamilyInterval& m) {
      Candidate c;
      c.value = score(m);
      if (std::isnan(c.value)) return;
      c.found = true;
      c.ball.center = m.center;
      c.ball.radius = m.radius;
      c.ball.lo = m.lo;
      c.ball.hi = m.hi;
      if (better(c, best)) best = c;
    });
  });
  OscillationReport r = to_report(rows, p);
  if (r.found) r.argmax.measure = family.space().measure(r.argmax.lo, r.argmax.hi);
  return r;
}

double interval_oscillation(const ExactIntegrator& f, double lo, double hi, double p) {
  const MassIntegral m = mass_integral(f, lo, hi);
  if (!(m.mass > 0)) return std::numeric_limits<double>::quiet_NaN();
  const double mean = m.integral / m.mass;
  return std::pow(f.power_deviation(lo, hi, mean, p) / m.mass, 1.0 / p);
}

}  // namespace

// ------------------------------------------------------------ interval engine

double ball_mean(const ExactIntegrator& f, const IntervalBall& ball) {
  const MassIntegral m = mass_integral(f, ball.lo, ball.hi);
  if (!(m.mass > 0)) throw std::domain_error("ball mean over a ball of zero measure");
  return m.integral / m.mass;
}

double ball_mean(const IntervalSpace& space, const PiecewiseLinear& f, const IntervalBall& ball) {
  return ball_mean(ExactIntegrator(f, space.density()), ball);
}

double p_oscillation(const ExactIntegrator& f, const IntervalBall& ball, double p) {
  check_p(p);
  const double v = interval_oscillation(f, ball.lo, ball.hi, p);
  if (std::isnan(v)) throw std::domain_error("oscillation over a ball of zero measure");
  return v;
}

double p_oscillation(const IntervalSpace& space, const PiecewiseLinear& f, const IntervalBall& ball, double p) {
  return p_oscillation(ExactIntegrator(f, space.density()), ball, p);
}

double mean_deviation(const ExactIntegrator& f, const IntervalBall& ball, double K, double p) {
  check_p(p);
  const double mass = f.direct_mass(ball.lo, ball.hi);
  if (!(mass > 0)) throw std::domain_error("deviation over a ball of zero measure");
  return std::pow(f.power_deviation(ball.lo, ball.hi, K, p) / mass, 1.0 / p);
}

OscillationReport bmo_norm(const IntervalSpace& space, const PiecewiseLinear& f, double p, const IntervalFamily& family) {
  check_p(p);
  const ExactIntegrator I(f, space.density());
  return interval_sup(family, p, [&](const FamilyInterval& m) { return interval_oscillation(I, m.lo, m.hi, p); });
}

OscillationReport blo_gauge(const IntervalSpace& space, const PiecewiseLinear& f, const IntervalFamily& family) {
  const ExactIntegrator I(f, space.density());
  return interval_sup(family, 1.0, [&](const FamilyInterval& m) {
    const MassIntegral mi = mass_integral(I, m.lo, m.hi);
    if (!(mi.mass > 0)) return std::numeric_limits<double>::quiet_NaN();
    return mi.integral / mi.mass - I.infimum(m.lo, m.hi);
  });
}

OscillationReport oscillation_modulus(const IntervalSpace& space, const PiecewiseLinear& f, double r, double p,
                                      const IntervalFamily& family) {
  if (!(r > 0)) throw std::invalid_argument("oscillation modulus needs r > 0");
  return bmo_norm(space, f, p, family.window(family.r_min(), r));
}

OscillationReport measure_modulus(const IntervalSpace& space, const PiecewiseLinear& f, double m, double p,
                                  const IntervalFamily& family) {
  if (!(m > 0)) throw std::invalid_argument("measure modulus needs m > 0");
  return bmo_norm(space, f, p, family.with_measure_cap(m));
}

DriftReport mean_drift(const IntervalSpace& space, const PiecewiseLinear& f, const IntervalBall& inner,
                       const IntervalBall& outer, double bmo) {
  if (inner.lo < outer.lo || inner.hi > outer.hi) throw std::invalid_argument("mean drift needs inner ⊆ outer");
  const ExactIntegrator I(f, space.density());
  DriftReport r;
  r.drift = std::fabs(ball_mean(I, inner) - ball_mean(I, outer));
  if (bmo > 0) r.ratio = r.drift / ((std::log(outer.radius / inner.radius) + 1.0) * bmo);
  return r;
}

// -------------------------------------------------------------- atomic engine

double ball_mean(const PointCloud& space, const SampledFunction& f, const Ball& ball) {
  double w = 0.0, s = 0.0;
  for (std::size_t i : ball.members) {
    w += space.weight(i);
    s += space.weight(i) * f[i];
  }
  if (!(w > 0)) throw std::domain_error("ball mean over an empty ball");
  return s / w;
}

double p_oscillation(const PointCloud& space, const SampledFunction& f, const Ball& ball, double p) {
  check_p(p);
  const double mean = ball_mean(space, f, ball);
  double w = 0.0, s = 0.0;
  for (std::size_t i : ball.members) {
    w += space.weight(i);
    s += space.weight(i) * std::pow(std::fabs(f[i] - mean), p);
  }
  return std::pow(s / w, 1.0 / p);
}

namespace {

/// Scores every ball of every row. score(row, k, W, S) gets the prefix weight and
/// weighted sum of the first counts[k] members.
template <class Score>
OscillationReport point_sup(const PointFamily& family, double p, Score score) {
  const PointCloud& space = family.space();
  std::vector<Candidate> rows(family.rows());
  parallel_for(rows.size(), [&](std::size_t center) {
    PointFamily::Row row;
    family.row(center, row);
    Candidate& best = rows[center];
    for (std::size_t k = 0; k < row.radii.size(); ++k) {
      Candidate c;
      c.value = score(row, k);
      if (std::isnan(c.value)) continue;
      c.found = true;
      c.ball.center_id = center;
      c.ball.center = static_cast<double>(center);
      c.ball.radius = row.radii[k];
      c.ball.members = row.counts[k];
      if (better(c, best)) best = c;
    }
  });
  OscillationReport r = to_report(rows, p);
  if (r.found) r.argmax.measure = space.ball(r.argmax.center_id, r.argmax.radius).measure;
  return r;
}

}  // namespace

OscillationReport bmo_norm(const PointCloud& space, const SampledFunction& f, double p, const PointFamily& family) {
  check_p(p);
  return point_sup(family, p, [&](const PointFamily::Row& row, std::size_t k) {
    const std::size_t m = row.counts[k];
    double W = 0.0, S = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      W += space.weight(row.order[q]);
      S += space.weight(row.order[q]) * f[row.order[q]];
    }
    const double mean = S / W;
    double D = 0.0;
    if (p == 1.0) {
      for (std::size_t q = 0; q < m; ++q) D += space.weight(row.order[q]) * std::fabs(f[row.order[q]] - mean);
      return D / W;
    }
    for (std::size_t q = 0; q < m; ++q)
      D += space.weight(row.order[q]) * std::pow(std::fabs(f[row.order[q]] - mean), p);
    return std::pow(D / W, 1.0 / p);
  });
}

OscillationReport blo_gauge(const PointCloud& space, const SampledFunction& f, const PointFamily& family) {
  return point_sup(family, 1.0, [&](const PointFamily::Row& row, std::size_t k) {
    double W = 0.0, S = 0.0, lo = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < row.counts[k]; ++q) {
      const std::size_t i = row.order[q];
      W += space.weight(i);
      S += space.weight(i) * f[i];
      lo = std::min(lo, f[i]);
    }
    return S / W - lo;
  });
}

OscillationReport oscillation_modulus(const PointCloud& space, const SampledFunction& f, double r, double p,
                                      const PointFamily& family) {
  if (!(r > 0)) throw std::invalid_argument("oscillation modulus needs r > 0");
  return bmo_norm(space, f, p, family.window(family.r_min(), r));
}

OscillationReport measure_modulus(const PointCloud& space, const SampledFunction& f, double m, double p,
                                  const PointFamily& family) {
  if (!(m > 0)) throw std::invalid_argument("measure modulus needs m > 0");
  check_p(p);
  return point_sup(family, p, [&](const PointFamily::Row& row, std::size_t k) {
    const std::size_t n = row.counts[k];
    double W = 0.0, S = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      W += space.weight(row.order[q]);
      S += space.weight(row.order[q]) * f[row.order[q]];
    }
    if (W > m) return std::numeric_limits<double>::quiet_NaN();
    const double mean = S / W;
    double D = 0.0;
    for (std::size_t q = 0; q < n; ++q)
      D += space.weight(row.order[q]) * std::pow(std::fabs(f[row.order[q]] - mean), p);
    return std::pow(D / W, 1.0 / p);
  });
}

DriftReport mean_drift(const PointCloud& space, const SampledFunction& f, const Ball& inner, const Ball& outer,
                       double bmo) {
  std::vector<std::size_t> a = inner.members, b = outer.members;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (!std::includes(b.begin(), b.end(), a.begin(), a.end()))
    throw std::invalid_argument("mean drift needs inner ⊆ outer");
  DriftReport r;
  r.drift = std::fabs(ball_mean(space, f, inner) - ball_mean(space, f, outer));
  if (bmo > 0) r.ratio = r.drift / ((std::log(outer.radius / inner.radius) + 1.0) * bmo);
  return r;
}

double step_oscillation(std::span<const double> weights, std::span<const double> values) {
  double W = 0.0, S = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    W += weights[k];
    S += weights[k] * values[k];
  }
  if (!(W > 0)) throw std::domain_error("oscillation over a set of zero measure");
  const double mean = S / W;
  double D = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) D += weights[k] * std::fabs(values[k] - mean);
  return D / W;
}

}  // namespace oscillat
