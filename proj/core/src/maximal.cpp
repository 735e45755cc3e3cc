#include "oscillat/maximal.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "oscillat/geometry.hpp"
#include "oscillat/integrate.hpp"
#include "oscillat/parallel.hpp"

namespace oscillat {

bool MaximalField::all_defined() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Entry {
  double value = kNegInf;
  double radius = 0.0;
  double center = 0.0;
  std::uint64_t key = std::numeric_limits<std::uint64_t>::max();
  bool found = false;
};

/// Larger value, then smaller radius, then lower center, then lower key.
bool better(const Entry& a, const Entry& b) {
  if (!a.found) return false;
  if (!b.found) return true;
  if (a.value != b.value) return a.value > b.value;
  if (a.radius != b.radius) return a.radius < b.radius;
  if (a.center != b.center) return a.center < b.center;
  return a.key < b.key;
}

void chmax(Entry& slot, const Entry& e) {
  if (better(e, slot)) slot = e;
}

/// Range "chmax" updates answered offline: level l slot k covers cells
/// [k, k + 2^l). Each update touches two overlapping power-of-two blocks;
/// finalize() pushes every level down to single cells.
class RangeMaxTable {
 public:
  explicit RangeMaxTable(std::size_t cells) : cells_(cells) {
    const std::size_t levels = cells == 0 ? 0 : std::bit_width(cells);
    table_.resize(levels);
    for (std::size_t l = 0; l < levels; ++l) table_[l].resize(cells - (std::size_t{1} << l) + 1);
  }

  void update(std::size_t first, std::size_t last, const Entry& e) {
    const std::size_t l = std::bit_width(last - first + 1) - 1;
    chmax(table_[l][first], e);
    chmax(table_[l][last + 1 - (std::size_t{1} << l)], e);
  }

  void merge(const RangeMaxTable& other) {
    for (std::size_t l = 0; l < table_.size(); ++l)
      for (std::size_t k = 0; k < table_[l].size(); ++k) chmax(table_[l][k], other.table_[l][k]);
  }

  const std::vector<Entry>& finalize() {
    for (std::size_t l = table_.size(); l-- > 1;) {
      const std::size_t half = std::size_t{1} << (l - 1);
      for (std::size_t k = 0; k < table_[l].size(); ++k) {
        chmax(table_[l - 1][k], table_[l][k]);
        chmax(table_[l - 1][k + half], table_[l][k]);
      }
    }
    return table_[0];
  }

 private:
  std::size_t cells_;
  std::vector<std::vector<Entry>> table_;
};

void check_alpha(double alpha, double Q, bool truncated) {
  if (!(alpha >= 0)) throw std::invalid_argument("fractional maximal function needs alpha >= 0");
  if (!(alpha < Q)) throw std::invalid_argument("fractional maximal function needs alpha < Q");
  if (alpha > 0 && truncated)
    throw std::invalid_argument("alpha > 0 requires a bounded space; this space is a truncated unbounded one");
}

double radius_factor(double r, double alpha) { return alpha == 0.0 ? 1.0 : std::pow(r, alpha); }

}  // namespace

CellRange cells_within(const IntervalSpace& space, double lo, double hi) {
  const auto g = space.grid();
  CellRange c;
  c.first = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), lo) - g.begin());
  const auto up = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), hi) - g.begin());
  c.last = up == 0 ? 0 : up - 1;
  if (c.last < c.first) c.last = c.first;
  c.last = std::min(c.last, space.cells());
  return c;
}

MaximalField fractional_maximal(const IntervalSpace& space, const PiecewiseLinear& f, double alpha,
                                const IntervalFamily& family, std::optional<double> Q) {
  check_alpha(alpha, Q.value_or(1.0), space.truncated());
  const ExactIntegrator A(f.abs(), space.density());
  const auto g = space.grid();
  const std::size_t N = g.size(), C = space.cells();
  std::vector<double> F(N), Mu(N);
  for (std::size_t k = 0; k < N; ++k) {
    F[k] = A.cumulative_integral(g[k]);
    Mu[k] = A.cumulative_mass(g[k]);
  }
  auto cum = [&](double x, std::size_t node, double& fx, double& mx) {
    if (node != npos) {
      fx = F[node];
      mx = Mu[node];
    } else {
      fx = A.cumulative_integral(x);
      mx = A.cumulative_mass(x);
    }
  };

  const std::size_t rows = family.rows();
  const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>({worker_count(), 8, rows}));
  std::vector<RangeMaxTable> tables;
  tables.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) tables.emplace_back(C);
  parallel_for(blocks, [&](std::size_t b) {
    RangeMaxTable& T = tables[b];
    for (std::size_t row = b; row < rows; row += blocks) {
      family.for_each_in_row(row, [&](const FamilyInterval& m) {
        const std::size_t first =
            m.lo_node != npos ? m.lo_node
                              : static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), m.lo) - g.begin());
        std::size_t end = m.hi_node;
        if (end == npos) end = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), m.hi) - g.begin()) - 1;
        if (end <= first) return;  // no whole cell inside the trace
        double f0, m0, f1, m1;
        cum(m.lo, m.lo_node, f0, m0);
        cum(m.hi, m.hi_node, f1, m1);
        const double mass = m1 - m0;
        if (!(mass > 0)) return;
        Entry e;
        e.value = radius_factor(m.radius, alpha) * ((f1 - f0) / mass);
        e.radius = m.radius;
        e.center = m.center;
        e.key = m.key;
        e.found = true;
        T.update(first, end - 1, e);
      });
    }
  });
  for (std::size_t b = 1; b < blocks; ++b) tables[0].merge(tables[b]);
  const std::vector<Entry>& cells = tables[0].finalize();

  MaximalField out;
  out.alpha = alpha;
  out.convention = family.convention();
  out.engine = Engine::interval_1d;
  out.values.assign(C, kNegInf);
  out.argmax.assign(C, BallSummary{});
  for (std::size_t k = 0; k < C; ++k) {
    if (!cells[k].found) continue;
    out.values[k] = cells[k].value;
    const FamilyInterval m = family.member(cells[k].key);
    BallSummary& s = out.argmax[k];
    s.center = m.center;
    s.radius = m.radius;
    s.lo = m.lo;
    s.hi = m.hi;
    s.measure = space.measure(m.lo, m.hi);
  }
  return out;
}

MaximalField fractional_maximal(const PointCloud& space, const SampledFunction& f, double alpha,
                                const PointFamily& family, std::optional<double> Q) {
  if (f.size() != space.size()) throw std::invalid_argument("function and space sizes differ");
  double q = 0.0;
  if (Q) {
    q = *Q;
  } else if (alpha > 0) {
    q = fit_lower_mass_bound(space, std::nullopt, {.max_centers = 256}).lmb->exponent;
  } else {
    q = std::numeric_limits<double>::infinity();
  }
  check_alpha(alpha, q, false);

  const std::size_t n = space.size();
  const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>({worker_count(), 8, n}));
  std::vector<std::vector<Entry>> fields(blocks, std::vector<Entry>(n));
  std::vector<std::vector<std::size_t>> who(blocks, std::vector<std::size_t>(n, npos));
  parallel_for(blocks, [&](std::size_t b) {
    PointFamily::Row row;
    std::vector<double> W, S;
    std::vector<Entry> best;
    for (std::size_t c = b; c < n; c += blocks) {
      family.row(c, row);
      if (row.radii.empty()) continue;
      const std::size_t M = row.counts.back();
      W.assign(M + 1, 0.0);
      S.assign(M + 1, 0.0);
      for (std::size_t q2 = 0; q2 < M; ++q2) {
        const std::size_t i = row.order[q2];
        W[q2 + 1] = W[q2] + space.weight(i);
        S[q2 + 1] = S[q2] + space.weight(i) * std::fabs(f[i]);
      }
      // best[k] = best ball among radii index >= k
      const std::size_t K = row.radii.size();
      best.assign(K + 1, Entry{});
      for (std::size_t k = K; k-- > 0;) {
        Entry e;
        const std::size_t m = row.counts[k];
        e.value = radius_factor(row.weight_radius[k], alpha) * (S[m] / W[m]);
        e.radius = row.weight_radius[k];
        e.center = static_cast<double>(c);
        e.key = (static_cast<std::uint64_t>(c) << 32) | k;
        e.found = true;
        best[k] = better(e, best[k + 1]) ? e : best[k + 1];
      }
      std::size_t k = 0;
      for (std::size_t rank = 0; rank < M; ++rank) {
        while (k < K && row.counts[k] <= rank) ++k;
        if (k == K) break;
        const std::size_t i = row.order[rank];
        if (better(best[k], fields[b][i])) {
          fields[b][i] = best[k];
          who[b][i] = static_cast<std::size_t>(best[k].key & 0xffffffffu);
        }
      }
    }
  });

  MaximalField out;
  out.alpha = alpha;
  out.convention = family.convention();
  out.engine = Engine::point_cloud;
  out.values.assign(n, kNegInf);
  out.argmax.assign(n, BallSummary{});
  std::vector<Entry> merged = fields[0];
  std::vector<std::size_t> merged_who = who[0];
  for (std::size_t b = 1; b < blocks; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      if (better(fields[b][i], merged[i])) {
        merged[i] = fields[b][i];
        merged_who[i] = who[b][i];
      }
    }
  }
  PointFamily::Row row;
  for (std::size_t i = 0; i < n; ++i) {
    if (!merged[i].found) continue;
    out.values[i] = merged[i].value;
    const auto c = static_cast<std::size_t>(merged[i].key >> 32);
    family.row(c, row);
    const std::size_t k = merged_who[i];
    BallSummary& s = out.argmax[i];
    s.center_id = c;
    s.center = static_cast<double>(c);
    s.radius = row.radii[k];
    s.members = row.counts[k];
    for (std::size_t q2 = 0; q2 < row.counts[k]; ++q2) s.measure += space.weight(row.order[q2]);
  }
  return out;
}

SplitField local_global_split(const IntervalSpace& space, const PiecewiseLinear& f, double alpha, double lambda,
                              double r, const IntervalFamily& family, std::optional<double> Q) {
  if (!(lambda >= 1) || !(r > 0)) throw std::invalid_argument("local/global split needs lambda >= 1 and r > 0");
  const double cut = lambda * r;
  SplitField s;
  s.local = fractional_maximal(space, f, alpha, family.window(family.r_min(), std::nextafter(cut, 0.0)), Q);
  s.global = fractional_maximal(space, f, alpha, family.window(cut, family.r_max()), Q);
  return s;
}

SplitField local_global_split(const PointCloud& space, const SampledFunction& f, double alpha, double lambda, double r,
                              const PointFamily& family, std::optional<double> Q) {
  if (!(lambda >= 1) || !(r > 0)) throw std::invalid_argument("local/global split needs lambda >= 1 and r > 0");
  const double cut = lambda * r;
  SplitField s;
  s.local = fractional_maximal(space, f, alpha, family.window(family.r_min(), std::nextafter(cut, 0.0)), Q);
  s.global = fractional_maximal(space, f, alpha, family.window(cut, family.r_max()), Q);
  return s;
}

double conjugate_exponent(double p, double alpha, double Q) {
  if (!(p >= 1) || !std::isfinite(p)) throw std::invalid_argument("conjugate exponent needs 1 <= p < inf");
  if (!(alpha >= 0) || !(Q > 0)) throw std::invalid_argument("conjugate exponent needs alpha >= 0 and Q > 0");
  const double ap = alpha * p;
  if (std::fabs(ap - Q) <= 1e-12 * Q) return std::numeric_limits<double>::infinity();
  if (ap > Q) throw std::invalid_argument("conjugate exponent needs alpha * p <= Q");
  return p * Q / (Q - ap);
}

PiecewiseLinear to_step_function(const IntervalSpace& space, const MaximalField& field) {
  if (field.engine != Engine::interval_1d || field.size() != space.cells())
    throw std::invalid_argument("field does not belong to this interval space");
  if (!field.all_defined()) throw std::invalid_argument("field has cells no family ball covers");
  const auto g = space.grid();
  return PiecewiseLinear::step(std::vector<double>(g.begin(), g.end()), field.values);
}

double field_mean(const IntervalSpace& space, std::span<const double> values, CellRange cells) {
  double W = 0.0, S = 0.0;
  for (std::size_t k = cells.first; k < cells.last; ++k) {
    W += space.cell_measure(k);
    S += space.cell_measure(k) * values[k];
  }
  if (!(W > 0)) throw std::domain_error("field mean over an empty cell range");
  return S / W;
}

double field_min(std::span<const double> values, CellRange cells) {
  if (cells.empty()) throw std::domain_error("field minimum over an empty cell range");
  return *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(cells.first),
                           values.begin() + static_cast<std::ptrdiff_t>(cells.last));
}

double field_oscillation(const IntervalSpace& space, std::span<const double> values, CellRange cells) {
  std::vector<double> w;
  w.reserve(cells.last - cells.first);
  for (std::size_t k = cells.first; k < cells.last; ++k) w.push_back(space.cell_measure(k));
  return step_oscillation(w, values.subspan(cells.first, cells.last - cells.first));
}

}  // namespace oscillat
