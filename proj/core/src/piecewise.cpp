#include "oscillat/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscillat {

double StepDensity::operator()(double x) const { return values[piece_of(x)]; }

std::size_t StepDensity::piece_of(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), x) -
                                  breakpoints.begin());
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> knots, std::vector<double> left,
                                 std::vector<double> right)
    : knots_(std::move(knots)), left_(std::move(left)), right_(std::move(right)) {
  if (knots_.size() < 2) throw std::invalid_argument("piecewise-linear function needs at least two knots");
  if (left_.size() + 1 != knots_.size() || right_.size() != left_.size())
    throw std::invalid_argument("piecewise-linear function: knot/value size mismatch");
  for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
    if (!(knots_[k] < knots_[k + 1])) throw std::invalid_argument("piecewise-linear knots must be strictly increasing");
  }
  for (std::size_t k = 0; k < left_.size(); ++k) {
    if (!std::isfinite(left_[k]) || !std::isfinite(right_[k]))
      throw std::invalid_argument("piecewise-linear values must be finite");
  }
}

PiecewiseLinear PiecewiseLinear::interpolate(std::vector<double> knots, std::span<const double> values) {
  if (values.size() != knots.size()) throw std::invalid_argument("interpolate: one value per knot required");
  std::vector<double> left(values.begin(), values.end() - 1);
  std::vector<double> right(values.begin() + 1, values.end());
  return {std::move(knots), std::move(left), std::move(right)};
}

PiecewiseLinear PiecewiseLinear::step(std::vector<double> knots, std::span<const double> levels) {
  std::vector<double> v(levels.begin(), levels.end());
  return {std::move(knots), v, v};
}

PiecewiseLinear PiecewiseLinear::constant(double a, double b, double c) { return {{a, b}, {c}, {c}}; }

std::size_t PiecewiseLinear::segment_of(double x) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  std::size_t k = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(k, segments() - 1);
}

double PiecewiseLinear::on_segment(std::size_t k, double x) const {
  const double t0 = knots_[k], t1 = knots_[k + 1];
  if (x <= t0) return left_[k];
  if (x >= t1) return right_[k];
  return left_[k] + (right_[k] - left_[k]) * ((x - t0) / (t1 - t0));
}

double PiecewiseLinear::operator()(double x) const { return on_segment(segment_of(x), x); }

PiecewiseLinear PiecewiseLinear::refined(std::span<const double> extra) const {
  std::vector<double> inside;
  for (double x : extra) {
    if (x > lower() && x < upper()) inside.push_back(x);
  }
  std::sort(inside.begin(), inside.end());
  std::vector<double> knots = merge_knots(knots_, inside);
  std::vector<double> left(knots.size() - 1), right(knots.size() - 1);
  for (std::size_t m = 0; m + 1 < knots.size(); ++m) {
    const std::size_t k = segment_of(0.5 * (knots[m] + knots[m + 1]));
    left[m] = on_segment(k, knots[m]);
    right[m] = on_segment(k, knots[m + 1]);
  }
  return {std::move(knots), std::move(left), std::move(right)};
}

PiecewiseLinear PiecewiseLinear::abs() const {
  std::vector<double> knots{knots_.front()}, left, right;
  for (std::size_t k = 0; k < segments(); ++k) {
    const double y0 = left_[k], y1 = right_[k];
    const double t0 = knots_[k], t1 = knots_[k + 1];
    if ((y0 < 0 && y1 > 0) || (y0 > 0 && y1 < 0)) {
      const double z = t0 + (t1 - t0) * (y0 / (y0 - y1));
      if (z > t0 && z < t1) {
        knots.push_back(z);
        left.push_back(std::fabs(y0));
        right.push_back(0.0);
        knots.push_back(t1);
        left.push_back(0.0);
        right.push_back(std::fabs(y1));
        continue;
      }
    }
    knots.push_back(t1);
    left.push_back(std::fabs(y0));
    right.push_back(std::fabs(y1));
  }
  return {std::move(knots), std::move(left), std::move(right)};
}

PiecewiseLinear PiecewiseLinear::shifted(double c) const {
  PiecewiseLinear g = *this;
  for (auto& v : g.left_) v += c;
  for (auto& v : g.right_) v += c;
  return g;
}

PiecewiseLinear PiecewiseLinear::scaled(double c) const {
  PiecewiseLinear g = *this;
  for (auto& v : g.left_) v *= c;
  for (auto& v : g.right_) v *= c;
  return g;
}

namespace {

template <class Op>
PiecewiseLinear combine(const PiecewiseLinear& f, const PiecewiseLinear& g, Op op) {
  if (f.lower() != g.lower() || f.upper() != g.upper())
    throw std::invalid_argument("piecewise-linear functions live on different intervals");
  std::vector<double> knots = merge_knots(f.knots(), g.knots());
  std::vector<double> left(knots.size() - 1), right(knots.size() - 1);
  for (std::size_t m = 0; m + 1 < knots.size(); ++m) {
    const double mid = 0.5 * (knots[m] + knots[m + 1]);
    const std::size_t kf = f.segment_of(mid), kg = g.segment_of(mid);
    left[m] = op(f.on_segment(kf, knots[m]), g.on_segment(kg, knots[m]));
    right[m] = op(f.on_segment(kf, knots[m + 1]), g.on_segment(kg, knots[m + 1]));
  }
  return {std::move(knots), std::move(left), std::move(right)};
}

}  // namespace

PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return combine(f, g, [](double x, double y) { return x + y; });
}

PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return combine(f, g, [](double x, double y) { return x - y; });
}

std::vector<double> merge_knots(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace oscillat
