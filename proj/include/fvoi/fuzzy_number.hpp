#pragma once

#include <span>
#include <vector>

#include "fvoi/piecewise_linear.hpp"

namespace fvoi {

/// Closed interval [lo, hi]. Endpoints may be infinite when the interval
/// describes a region of the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo, double hi);

  double width() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Breakpoint {
  double x = 0.0;      // abscissa, in utility units
  double grade = 0.0;  // membership in [0, 1]

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Normalized, quasiconcave, piecewise-linear fuzzy number with compact
/// support.
///
/// The membership function interpolates linearly between breakpoints and is
/// zero outside [first abscissa, last abscissa]. A boundary breakpoint of
/// grade 1 is a vertical flank; a single breakpoint is a crisp number.
/// Values are immutable and every constructor validates the invariants.
class FuzzyNumber {
 public:
  /// The crisp zero.
  FuzzyNumber();

  static FuzzyNumber crisp(double v);
  static FuzzyNumber triangular(double a, double b, double c);
  static FuzzyNumber trapezoidal(double a, double b, double c, double d);

  /// Validates a candidate breakpoint list. Exact consecutive duplicates and
  /// redundant zero-grade points at either end are dropped; everything else
  /// is kept as given.
  static FuzzyNumber from_breakpoints(std::vector<Breakpoint> points);

  /// Rebuilds a fuzzy number from nested alpha-cuts at ascending levels that
  /// start at 0 and end at 1, interpolating linearly in between.
  static FuzzyNumber from_alpha_cuts(std::span<const double> levels, std::span<const Interval> cuts);

  std::span<const Breakpoint> breakpoints() const { return points_; }
  bool is_crisp() const { return points_.size() == 1; }

  double membership(double w) const;
  Interval alpha_cut(double alpha) const;
  Interval support() const { return {points_.front().x, points_.back().x}; }
  Interval modal_set() const { return alpha_cut(1.0); }
  double area() const;

  PiecewiseLinear membership_function() const;

  /// Index of the first and last breakpoint with grade 1.
  std::size_t first_modal() const;
  std::size_t last_modal() const;

  friend bool operator==(const FuzzyNumber&, const FuzzyNumber&) = default;

 private:
  struct Unchecked {};
  FuzzyNumber(Unchecked, std::vector<Breakpoint> points);

  friend FuzzyNumber assemble(std::vector<Breakpoint> points);

  std::vector<Breakpoint> points_;
};

FuzzyNumber make_crisp(double v);
FuzzyNumber make_triangular(double a, double b, double c);
FuzzyNumber make_trapezoidal(double a, double b, double c, double d);
FuzzyNumber from_breakpoints(std::vector<Breakpoint> points);

double membership_at(const FuzzyNumber& f, double w);
Interval alpha_cut(const FuzzyNumber& f, double alpha);
double area(const FuzzyNumber& f);

/// Extension-principle sum, exact over the piecewise-linear family.
FuzzyNumber add(const FuzzyNumber& f, const FuzzyNumber& g);
FuzzyNumber negate(const FuzzyNumber& f);
FuzzyNumber subtract(const FuzzyNumber& f, const FuzzyNumber& g);
/// Multiplies abscissas by lambda; lambda == 0 collapses to crisp(0).
FuzzyNumber scale(const FuzzyNumber& f, double lambda);
FuzzyNumber translate(const FuzzyNumber& f, double beta);

FuzzyNumber operator+(const FuzzyNumber& f, const FuzzyNumber& g);
FuzzyNumber operator-(const FuzzyNumber& f, const FuzzyNumber& g);
FuzzyNumber operator-(const FuzzyNumber& f);
FuzzyNumber operator*(double lambda, const FuzzyNumber& f);

double hamming_distance(const FuzzyNumber& f, const FuzzyNumber& g);
PiecewiseLinear pointwise_min(const FuzzyNumber& f, const FuzzyNumber& g);

/// Sup-norm of the membership difference.
double membership_distance(const FuzzyNumber& f, const FuzzyNumber& g);
bool approx_equal(const FuzzyNumber& f, const FuzzyNumber& g, double tol = 1e-9);

}  // namespace fvoi
