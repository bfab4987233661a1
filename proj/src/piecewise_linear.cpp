#include "fvoi/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "fvoi/errors.hpp"

namespace fvoi {
namespace {

double lerp(const Point& p, const Point& q, double x) {
  return p.y + (x - p.x) / (q.x - p.x) * (q.y - p.y);
}

std::vector<double> merged_abscissas(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  std::vector<double> xs;
  xs.reserve(f.points().size() + g.points().size());
  for (const auto& p : f.points()) xs.push_back(p.x);
  for (const auto& p : g.points()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Integrates h(f(x), g(x)) exactly, where h is linear on each side of the
// diagonal f = g. Segments are split at the crossing of the two linear pieces.
template <class H>
double integrate_pair(const PiecewiseLinear& f, const PiecewiseLinear& g, H h) {
  if (h(f.left_tail(), g.left_tail()) != 0.0 || h(f.right_tail(), g.right_tail()) != 0.0) {
    throw NumericError("divergent integral: integrand has a nonzero tail");
  }
  const std::vector<double> xs = merged_abscissas(f, g);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i];
    const double b = xs[i + 1];
    const double f0 = f.right_limit(a);
    const double f1 = f.left_limit(b);
    const double g0 = g.right_limit(a);
    const double g1 = g.left_limit(b);
    const double d0 = f0 - g0;
    const double d1 = f1 - g1;
    const double width = b - a;
    if ((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0)) {
      const double t = d0 / (d0 - d1);
      const double fc = f0 + t * (f1 - f0);
      const double gc = g0 + t * (g1 - g0);
      const double hc = h(fc, gc);
      total += width * (t * (h(f0, g0) + hc) + (1.0 - t) * (hc + h(f1, g1))) / 2.0;
    } else {
      total += width * (h(f0, g0) + h(f1, g1)) / 2.0;
    }
  }
  return total;
}

template <class H>
PiecewiseLinear combine(const PiecewiseLinear& f, const PiecewiseLinear& g, H h) {
  const double left_tail = h(f.left_tail(), g.left_tail());
  const double right_tail = h(f.right_tail(), g.right_tail());
  const std::vector<double> xs = merged_abscissas(f, g);

  std::vector<Point> out;
  auto emit = [&out](double x, double y) {
    if (out.empty() || out.back().x != x || out.back().y != y) out.push_back({x, y});
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    emit(x, h(f.left_limit(x), g.left_limit(x)));
    emit(x, h(f(x), g(x)));
    emit(x, h(f.right_limit(x), g.right_limit(x)));
    if (i + 1 < xs.size()) {
      const double b = xs[i + 1];
      const double d0 = f.right_limit(x) - g.right_limit(x);
      const double d1 = f.left_limit(b) - g.left_limit(b);
      if ((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0)) {
        const double t = d0 / (d0 - d1);
        const double xc = x + t * (b - x);
        if (xc > x && xc < b) {
          const double fc = f.right_limit(x) + t * (f.left_limit(b) - f.right_limit(x));
          emit(xc, fc);
        }
      }
    }
  }
  while (out.size() >= 2 && out[0].x == out[1].x && out[0].y == left_tail) {
    out.erase(out.begin());
  }
  while (out.size() >= 2 && out[out.size() - 1].x == out[out.size() - 2].x &&
         out.back().y == right_tail) {
    out.pop_back();
  }
  if (out.size() == 1 && out[0].y == left_tail && left_tail == right_tail) out.clear();
  return PiecewiseLinear(std::move(out), left_tail, right_tail);
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<Point> points, double left_tail, double right_tail)
    : points_(std::move(points)), left_tail_(left_tail), right_tail_(right_tail) {
  if (!std::isfinite(left_tail_) || !std::isfinite(right_tail_)) {
    throw InvariantError("piecewise-linear tails must be finite");
  }
  if (points_.empty() && left_tail_ != right_tail_) {
    throw InvariantError("a piecewise-linear function without points must be constant");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
      throw InvariantError("piecewise-linear points must be finite");
    }
    if (i > 0 && points_[i].x < points_[i - 1].x) {
      throw InvariantError("piecewise-linear abscissas must be nondecreasing");
    }
  }
}

PiecewiseLinear PiecewiseLinear::constant(double value) { return PiecewiseLinear({}, value, value); }

double PiecewiseLinear::left_limit(double x) const {
  if (points_.empty() || x <= points_.front().x) return left_tail_;
  if (x > points_.back().x) return right_tail_;
  const auto it = std::lower_bound(points_.begin(), points_.end(), x,
                                   [](const Point& p, double v) { return p.x < v; });
  if (it->x == x) return it->y;
  return lerp(*std::prev(it), *it, x);
}

double PiecewiseLinear::right_limit(double x) const {
  if (points_.empty() || x >= points_.back().x) return right_tail_;
  if (x < points_.front().x) return left_tail_;
  const auto it = std::upper_bound(points_.begin(), points_.end(), x,
                                   [](double v, const Point& p) { return v < p.x; });
  const auto prev = std::prev(it);
  if (prev->x == x) return prev->y;
  return lerp(*prev, *it, x);
}

double PiecewiseLinear::operator()(double x) const {
  double value = std::max(left_limit(x), right_limit(x));
  const auto lo = std::lower_bound(points_.begin(), points_.end(), x,
                                   [](const Point& p, double v) { return p.x < v; });
  for (auto it = lo; it != points_.end() && it->x == x; ++it) value = std::max(value, it->y);
  return value;
}

double PiecewiseLinear::integral() const {
  return integrate_pair(*this, PiecewiseLinear::constant(0.0),
                        [](double f, double) { return f; });
}

double hamming_distance(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return integrate_pair(f, g, [](double a, double b) { return std::abs(a - b); });
}

double positive_part_integral(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return integrate_pair(f, g, [](double a, double b) { return std::max(0.0, a - b); });
}

double min_integral(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return integrate_pair(f, g, [](double a, double b) { return std::min(a, b); });
}

PiecewiseLinear pointwise_min(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return combine(f, g, [](double a, double b) { return std::min(a, b); });
}

PiecewiseLinear pointwise_max(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return combine(f, g, [](double a, double b) { return std::max(a, b); });
}

double sup_distance(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  double worst = std::max(std::abs(f.left_tail() - g.left_tail()),
                          std::abs(f.right_tail() - g.right_tail()));
  for (double x : merged_abscissas(f, g)) {
    worst = std::max(worst, std::abs(f.left_limit(x) - g.left_limit(x)));
    worst = std::max(worst, std::abs(f.right_limit(x) - g.right_limit(x)));
    worst = std::max(worst, std::abs(f(x) - g(x)));
  }
  return worst;
}

}  // namespace fvoi
