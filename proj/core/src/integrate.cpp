#include "oscillat/integrate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace oscillat {

double abs_power_integral(double y0, double y1, double len, double p) {
  if (len <= 0) return 0.0;
  if (p == 1.0) {
    if ((y0 >= 0 && y1 >= 0) || (y0 <= 0 && y1 <= 0)) return 0.5 * len * std::fabs(y0 + y1);
    // sign change: two triangles
    return 0.5 * len * (y0 * y0 + y1 * y1) / (std::fabs(y0) + std::fabs(y1));
  }
  if (p == 2.0) return len * (y0 * y0 + y0 * y1 + y1 * y1) / 3.0;
  const double scale = std::max(std::fabs(y0), std::fabs(y1));
  if (scale == 0.0) return 0.0;
  const double dy = y1 - y0;
  if (std::fabs(dy) <= 1e-6 * scale) {
    // nearly constant and sign-definite: Simpson is accurate to O(dy^2)
    const double ym = 0.5 * (y0 + y1);
    return len * (std::pow(std::fabs(y0), p) + 4.0 * std::pow(std::fabs(ym), p) + std::pow(std::fabs(y1), p)) / 6.0;
  }
  // d/dy [y|y|^p] = (p+1)|y|^p holds through the sign change
  const double F1 = y1 * std::pow(std::fabs(y1), p);
  const double F0 = y0 * std::pow(std::fabs(y0), p);
  return len * (F1 - F0) / ((p + 1.0) * dy);
}

ExactIntegrator::ExactIntegrator(const PiecewiseLinear& f, const StepDensity& density) {
  std::vector<double> cuts;
  for (double x : density.breakpoints) {
    if (x > f.lower() && x < f.upper()) cuts.push_back(x);
  }
  u_ = merge_knots(f.knots(), cuts);
  const std::size_t P = u_.size() - 1;
  y0_.resize(P);
  y1_.resize(P);
  w_.resize(P);
  for (std::size_t k = 0; k < P; ++k) {
    const double mid = 0.5 * (u_[k] + u_[k + 1]);
    const std::size_t s = f.segment_of(mid);
    y0_[k] = f.on_segment(s, u_[k]);
    y1_[k] = f.on_segment(s, u_[k + 1]);
    w_[k] = density(mid);
  }
  cum_mass_.assign(P + 1, 0.0);
  cum_int_.assign(P + 1, 0.0);
  for (std::size_t k = 0; k < P; ++k) {
    const double len = u_[k + 1] - u_[k];
    cum_mass_[k + 1] = cum_mass_[k] + w_[k] * len;
    cum_int_[k + 1] = cum_int_[k] + w_[k] * len * 0.5 * (y0_[k] + y1_[k]);
  }
  const std::size_t levels = std::bit_width(P);
  min_table_.resize(levels);
  max_table_.resize(levels);
  min_table_[0].resize(P);
  max_table_[0].resize(P);
  for (std::size_t k = 0; k < P; ++k) {
    min_table_[0][k] = std::min(y0_[k], y1_[k]);
    max_table_[0][k] = std::max(y0_[k], y1_[k]);
  }
  for (std::size_t L = 1; L < levels; ++L) {
    const std::size_t span = std::size_t{1} << L, half = span >> 1;
    const std::size_t count = P - span + 1;
    min_table_[L].resize(count);
    max_table_[L].resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      min_table_[L][k] = std::min(min_table_[L - 1][k], min_table_[L - 1][k + half]);
      max_table_[L][k] = std::max(max_table_[L - 1][k], max_table_[L - 1][k + half]);
    }
  }
}

std::size_t ExactIntegrator::piece_at(double x) const {
  auto it = std::upper_bound(u_.begin(), u_.end(), x);
  std::size_t k = it == u_.begin() ? 0 : static_cast<std::size_t>(it - u_.begin()) - 1;
  return std::min(k, w_.size() - 1);
}

double ExactIntegrator::value_in(std::size_t k, double x) const {
  if (x <= u_[k]) return y0_[k];
  if (x >= u_[k + 1]) return y1_[k];
  return y0_[k] + (y1_[k] - y0_[k]) * ((x - u_[k]) / (u_[k + 1] - u_[k]));
}

double ExactIntegrator::cumulative_mass(double x) const {
  if (x <= u_.front()) return 0.0;
  if (x >= u_.back()) return cum_mass_.back();
  const std::size_t k = piece_at(x);
  return cum_mass_[k] + w_[k] * (x - u_[k]);
}

double ExactIntegrator::cumulative_integral(double x) const {
  if (x <= u_.front()) return 0.0;
  if (x >= u_.back()) return cum_int_.back();
  const std::size_t k = piece_at(x);
  return cum_int_[k] + w_[k] * (x - u_[k]) * 0.5 * (y0_[k] + value_in(k, x));
}

double ExactIntegrator::direct_mass(double lo, double hi) const {
  double s = 0.0;
  for_pieces(lo, hi, [&](double x0, double x1, double, double, double w) { s += w * (x1 - x0); });
  return s;
}

double ExactIntegrator::direct_integral(double lo, double hi) const {
  double s = 0.0;
  for_pieces(lo, hi, [&](double x0, double x1, double y0, double y1, double w) {
    s += w * (x1 - x0) * 0.5 * (y0 + y1);
  });
  return s;
}

double ExactIntegrator::power_deviation(double lo, double hi, double c, double p) const {
  double s = 0.0;
  for_pieces(lo, hi, [&](double x0, double x1, double y0, double y1, double w) {
    s += w * abs_power_integral(y0 - c, y1 - c, x1 - x0, p);
  });
  return s;
}

double ExactIntegrator::range_min(std::size_t first, std::size_t last) const {
  const std::size_t L = std::bit_width(last - first + 1) - 1;
  return std::min(min_table_[L][first], min_table_[L][last + 1 - (std::size_t{1} << L)]);
}

double ExactIntegrator::range_max(std::size_t first, std::size_t last) const {
  const std::size_t L = std::bit_width(last - first + 1) - 1;
  return std::max(max_table_[L][first], max_table_[L][last + 1 - (std::size_t{1} << L)]);
}

double ExactIntegrator::infimum(double lo, double hi) const {
  if (!(lo < hi)) throw std::invalid_argument("infimum over an empty interval");
  const std::size_t k0 = piece_at(lo);
  std::size_t k1 = piece_at(hi);
  if (k1 > k0 && u_[k1] >= hi) --k1;
  if (k0 == k1) return std::min(value_in(k0, lo), value_in(k0, hi));
  double m = std::min({value_in(k0, lo), y1_[k0], y0_[k1], value_in(k1, hi)});
  if (k1 > k0 + 1) m = std::min(m, range_min(k0 + 1, k1 - 1));
  return m;
}

double ExactIntegrator::supremum(double lo, double hi) const {
  if (!(lo < hi)) throw std::invalid_argument("supremum over an empty interval");
  const std::size_t k0 = piece_at(lo);
  std::size_t k1 = piece_at(hi);
  if (k1 > k0 && u_[k1] >= hi) --k1;
  if (k0 == k1) return std::max(value_in(k0, lo), value_in(k0, hi));
  double m = std::max({value_in(k0, lo), y1_[k0], y0_[k1], value_in(k1, hi)});
  if (k1 > k0 + 1) m = std::max(m, range_max(k0 + 1, k1 - 1));
  return m;
}

}  // namespace oscillat
