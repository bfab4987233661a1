#pragma once

#include <vector>

namespace fvoi {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// A piecewise-linear function of one real variable with constant tails.
///
/// The function equals `left_tail` on (-inf, x_first), `right_tail` on
/// (x_last, +inf), and interpolates linearly between consecutive points in
/// between. Points may share an abscissa; a run of points at the same x is a
/// vertical segment (a jump). The left limit at such an x is the first value
/// of the run, the right limit the last, and the value at x itself is the
/// largest of the run together with both limits, which makes membership
/// functions upper semicontinuous.
///
/// The empty point list is the constant function (both tails must agree).
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<Point> points, double left_tail, double right_tail);

  static PiecewiseLinear constant(double value);

  const std::vector<Point>& points() const { return points_; }
  double left_tail() const { return left_tail_; }
  double right_tail() const { return right_tail_; }

  double left_limit(double x) const;
  double right_limit(double x) const;
  double operator()(double x) const;

  /// Exact integral over the real line. Throws NumericError when a tail is
  /// nonzero.
  double integral() const;

  friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

 private:
  std::vector<Point> points_;
  double left_tail_ = 0.0;
  double right_tail_ = 0.0;
};

/// ∫ |f − g| over the real line. Throws NumericError when the tails differ.
double hamming_distance(const PiecewiseLinear& f, const PiecewiseLinear& g);

/// ∫ max(0, f − g). Throws NumericError if the integrand has a nonzero tail.
double positive_part_integral(const PiecewiseLinear& f, const PiecewiseLinear& g);

/// ∫ min(f, g). Throws NumericError if the integrand has a nonzero tail.
double min_integral(const PiecewiseLinear& f, const PiecewiseLinear& g);

PiecewiseLinear pointwise_min(const PiecewiseLinear& f, const PiecewiseLinear& g);
PiecewiseLinear pointwise_max(const PiecewiseLinear& f, const PiecewiseLinear& g);

/// Supremum of |f − g|, attained at a breakpoint of one of the operands
/// (checked from both sides and at the point itself) or on the tails.
double sup_distance(const PiecewiseLinear& f, const PiecewiseLinear& g);

}  // namespace fvoi
