#include "fvoi/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "fvoi/errors.hpp"

namespace fvoi {
namespace {

// Checks every invariant and returns the list with exact duplicates and
// redundant zero-grade end points removed.
std::vector<Breakpoint> validated(std::vector<Breakpoint> pts) {
  if (pts.empty()) throw InvariantError("fuzzy number needs at least one breakpoint");
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.grade)) {
      throw InvariantError("fuzzy number breakpoints must be finite");
    }
    if (p.grade < 0.0 || p.grade > 1.0) {
      throw InvariantError(fmt::format("grade {} at x = {} is outside [0, 1]", p.grade, p.x));
    }
  }
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].x > pts[i - 1].x)) {
      throw InvariantError(
          fmt::format("abscissas must be strictly increasing ({} after {})", pts[i].x, pts[i - 1].x));
    }
  }
  const auto peak = std::max_element(pts.begin(), pts.end(),
                                     [](const Breakpoint& a, const Breakpoint& b) { return a.grade < b.grade; });
  if (peak->grade != 1.0) {
    throw InvariantError(fmt::format("normality violated: maximum grade is {}", peak->grade));
  }
  std::size_t i = 0;
  while (i + 1 < pts.size() && pts[i + 1].grade >= pts[i].grade) ++i;
  while (i + 1 < pts.size() && pts[i + 1].grade <= pts[i].grade) ++i;
  if (i + 1 != pts.size()) {
    throw InvariantError(fmt::format("quasiconcavity violated at x = {}", pts[i + 1].x));
  }
  while (pts.size() >= 2 && pts[0].grade == 0.0 && pts[1].grade == 0.0) pts.erase(pts.begin());
  while (pts.size() >= 2 && pts.back().grade == 0.0 && pts[pts.size() - 2].grade == 0.0) pts.pop_back();
  if (pts.size() > 1) {
    for (const Breakpoint* end : {&pts.front(), &pts.back()}) {
      if (end->grade != 0.0 && end->grade != 1.0) {
        throw InvariantError(
            fmt::format("nonzero boundary grade {} at x = {} on a multi-point list", end->grade, end->x));
      }
    }
  }
  return pts;
}

// Breakpoints of one flank ordered by ascending grade: the left flank runs
// from the first breakpoint up to the first modal one, the right flank from
// the last breakpoint back to the last modal one.
std::vector<Breakpoint> left_flank(const FuzzyNumber& f) {
  const auto pts = f.breakpoints();
  return {pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(f.first_modal()) + 1};
}

std::vector<Breakpoint> right_flank(const FuzzyNumber& f) {
  const auto pts = f.breakpoints();
  return {pts.rbegin(), pts.rend() - static_cast<std::ptrdiff_t>(f.last_modal())};
}

struct GradeSpan {
  double first;
  double last;
};

// Abscissas reached on the flank at grade g, in walking order. A plateau at
// grade g yields two different abscissas.
GradeSpan at_grade(const std::vector<Breakpoint>& flank, double g) {
  const auto it = std::lower_bound(flank.begin(), flank.end(), g,
                                   [](const Breakpoint& p, double v) { return p.grade < v; });
  if (it->grade == g) {
    auto last = it;
    while (std::next(last) != flank.end() && std::next(last)->grade == g) ++last;
    return {it->x, last->x};
  }
  if (it == flank.begin()) return {it->x, it->x};
  const auto prev = std::prev(it);
  const double x = prev->x + (g - prev->grade) / (it->grade - prev->grade) * (it->x - prev->x);
  return {x, x};
}

std::vector<double> grade_union(const std::vector<Breakpoint>& a, const std::vector<Breakpoint>& b) {
  std::vector<double> grades;
  for (const auto& p : a) grades.push_back(p.grade);
  for (const auto& p : b) grades.push_back(p.grade);
  std::sort(grades.begin(), grades.end());
  grades.erase(std::unique(grades.begin(), grades.end()), grades.end());
  return grades;
}

std::vector<Breakpoint> sum_flanks(const std::vector<Breakpoint>& a, const std::vector<Breakpoint>& b) {
  std::vector<Breakpoint> out;
  for (double g : grade_union(a, b)) {
    const GradeSpan sa = at_grade(a, g);
    const GradeSpan sb = at_grade(b, g);
    out.push_back({sa.first + sb.first, g});
    if (sa.first != sa.last || sb.first != sb.last) out.push_back({sa.last + sb.last, g});
  }
  return out;
}

}  // namespace

// Builds a fuzzy number from arithmetic output. Abscissas that rounding made
// equal or out of order are merged, keeping the higher grade unless that
// would leave a boundary grade strictly between 0 and 1.
FuzzyNumber assemble(std::vector<Breakpoint> points) {
  std::vector<Breakpoint> out;
  out.reserve(points.size());
  for (auto p : points) {
    if (p.x == 0.0) p.x = 0.0;
    while (true) {
      if (out.empty() || p.x > out.back().x) {
        out.push_back(p);
        break;
      }
      const Breakpoint& back = out.back();
      if (p.grade == back.grade) break;
      const bool p_higher = p.grade > back.grade;
      const Breakpoint& low = p_higher ? back : p;
      const Breakpoint& high = p_higher ? p : back;
      const bool keep_low = low.grade == 0.0 && high.grade < 1.0;
      const bool keep_p = p_higher != keep_low;
      if (!keep_p) break;
      out.pop_back();
    }
  }
  return FuzzyNumber(FuzzyNumber::Unchecked{}, validated(std::move(out)));
}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw InvariantError(fmt::format("interval [{}, {}] is not ordered", lo, hi));
  }
}

FuzzyNumber::FuzzyNumber() : points_{{0.0, 1.0}} {}

FuzzyNumber::FuzzyNumber(Unchecked, std::vector<Breakpoint> points) : points_(std::move(points)) {}

FuzzyNumber FuzzyNumber::crisp(double v) {
  if (!std::isfinite(v)) throw InvariantError("crisp value must be finite");
  return FuzzyNumber(Unchecked{}, {{v, 1.0}});
}

FuzzyNumber FuzzyNumber::triangular(double a, double b, double c) {
  return trapezoidal(a, b, b, c);
}

FuzzyNumber FuzzyNumber::trapezoidal(double a, double b, double c, double d) {
  for (double v : {a, b, c, d}) {
    if (!std::isfinite(v)) throw InvariantError("shape parameters must be finite");
  }
  if (!(a <= b && b <= c && c <= d)) {
    throw InvariantError(fmt::format("shape parameters ({}, {}, {}, {}) are not ordered", a, b, c, d));
  }
  std::vector<Breakpoint> pts;
  if (a < b) pts.push_back({a, 0.0});
  pts.push_back({b, 1.0});
  if (c > b) pts.push_back({c, 1.0});
  if (d > c) pts.push_back({d, 0.0});
  return FuzzyNumber(Unchecked{}, validated(std::move(pts)));
}

FuzzyNumber FuzzyNumber::from_breakpoints(std::vector<Breakpoint> points) {
  return FuzzyNumber(Unchecked{}, validated(std::move(points)));
}

FuzzyNumber FuzzyNumber::from_alpha_cuts(std::span<const double> levels, std::span<const Interval> cuts) {
  if (levels.size() < 2 || levels.size() != cuts.size() || levels.front() != 0.0 || levels.back() != 1.0) {
    throw InvariantError("alpha-cut levels must run from 0 to 1 with one cut per level");
  }
  for (std::size_t k = 1; k < levels.size(); ++k) {
    if (!(levels[k] > levels[k - 1])) throw InvariantError("alpha-cut levels must be strictly increasing");
    if (cuts[k].lo < cuts[k - 1].lo || cuts[k].hi > cuts[k - 1].hi) {
      throw InvariantError(fmt::format("alpha-cuts are not nested at level {}", levels[k]));
    }
  }
  std::vector<Breakpoint> pts;
  for (std::size_t k = 0; k < levels.size(); ++k) pts.push_back({cuts[k].lo, levels[k]});
  for (std::size_t k = levels.size(); k-- > 0;) pts.push_back({cuts[k].hi, levels[k]});
  return assemble(std::move(pts));
}

std::size_t FuzzyNumber::first_modal() const {
  std::size_t i = 0;
  while (points_[i].grade != 1.0) ++i;
  return i;
}

std::size_t FuzzyNumber::last_modal() const {
  std::size_t i = points_.size() - 1;
  while (points_[i].grade != 1.0) --i;
  return i;
}

double FuzzyNumber::membership(double w) const {
  if (w < points_.front().x || w > points_.back().x) return 0.0;
  const auto it = std::lower_bound(points_.begin(), points_.end(), w,
                                   [](const Breakpoint& p, double v) { return p.x < v; });
  if (it->x == w) return it->grade;
  const auto prev = std::prev(it);
  return prev->grade + (w - prev->x) / (it->x - prev->x) * (it->grade - prev->grade);
}

Interval FuzzyNumber::alpha_cut(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvariantError(fmt::format("alpha = {} is outside [0, 1]", alpha));
  }
  if (alpha == 0.0) return support();

  std::size_t i = 0;
  while (points_[i].grade < alpha) ++i;
  double lo = points_[i].x;
  if (i > 0 && points_[i].grade > alpha) {
    const auto& p = points_[i - 1];
    const auto& q = points_[i];
    lo = p.x + (alpha - p.grade) / (q.grade - p.grade) * (q.x - p.x);
  }
  std::size_t j = points_.size() - 1;
  while (points_[j].grade < alpha) --j;
  double hi = points_[j].x;
  if (j + 1 < points_.size() && points_[j].grade > alpha) {
    const auto& p = points_[j + 1];
    const auto& q = points_[j];
    hi = p.x + (alpha - p.grade) / (q.grade - p.grade) * (q.x - p.x);
  }
  return {lo, hi};
}

double FuzzyNumber::area() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    total += (points_[i + 1].x - points_[i].x) * (points_[i].grade + points_[i + 1].grade) / 2.0;
  }
  return total;
}

PiecewiseLinear FuzzyNumber::membership_function() const {
  std::vector<Point> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.push_back({p.x, p.grade});
  return PiecewiseLinear(std::move(pts), 0.0, 0.0);
}

FuzzyNumber make_crisp(double v) { return FuzzyNumber::crisp(v); }
FuzzyNumber make_triangular(double a, double b, double c) { return FuzzyNumber::triangular(a, b, c); }
FuzzyNumber make_trapezoidal(double a, double b, double c, double d) {
  return FuzzyNumber::trapezoidal(a, b, c, d);
}
FuzzyNumber from_breakpoints(std::vector<Breakpoint> points) {
  return FuzzyNumber::from_breakpoints(std::move(points));
}

double membership_at(const FuzzyNumber& f, double w) { return f.membership(w); }
Interval alpha_cut(const FuzzyNumber& f, double alpha) { return f.alpha_cut(alpha); }
double area(const FuzzyNumber& f) { return f.area(); }

FuzzyNumber add(const FuzzyNumber& f, const FuzzyNumber& g) {
  std::vector<Breakpoint> pts = sum_flanks(left_flank(f), left_flank(g));
  std::vector<Breakpoint> right = sum_flanks(right_flank(f), right_flank(g));
  pts.insert(pts.end(), right.rbegin(), right.rend());
  return assemble(std::move(pts));
}

FuzzyNumber negate(const FuzzyNumber& f) {
  std::vector<Breakpoint> pts;
  const auto src = f.breakpoints();
  for (auto it = src.rbegin(); it != src.rend(); ++it) pts.push_back({0.0 - it->x, it->grade});
  return assemble(std::move(pts));
}

FuzzyNumber subtract(const FuzzyNumber& f, const FuzzyNumber& g) { return add(f, negate(g)); }

FuzzyNumber scale(const FuzzyNumber& f, double lambda) {
  if (!std::isfinite(lambda)) throw InvariantError("scale factor must be finite");
  if (lambda == 0.0) return FuzzyNumber::crisp(0.0);
  if (lambda < 0.0) return scale(negate(f), -lambda);
  std::vector<Breakpoint> pts;
  for (const auto& p : f.breakpoints()) pts.push_back({p.x * lambda, p.grade});
  return assemble(std::move(pts));
}

FuzzyNumber translate(const FuzzyNumber& f, double beta) {
  if (!std::isfinite(beta)) throw InvariantError("translation must be finite");
  std::vector<Breakpoint> pts;
  for (const auto& p : f.breakpoints()) pts.push_back({p.x + beta, p.grade});
  return assemble(std::move(pts));
}

FuzzyNumber operator+(const FuzzyNumber& f, const FuzzyNumber& g) { return add(f, g); }
FuzzyNumber operator-(const FuzzyNumber& f, const FuzzyNumber& g) { return subtract(f, g); }
FuzzyNumber operator-(const FuzzyNumber& f) { return negate(f); }
FuzzyNumber operator*(double lambda, const FuzzyNumber& f) { return scale(f, lambda); }

double hamming_distance(const FuzzyNumber& f, const FuzzyNumber& g) {
  return hamming_distance(f.membership_function(), g.membership_function());
}

PiecewiseLinear pointwise_min(const FuzzyNumber& f, const FuzzyNumber& g) {
  return pointwise_min(f.membership_function(), g.membership_function());
}

double membership_distance(const FuzzyNumber& f, const FuzzyNumber& g) {
  return sup_distance(f.membership_function(), g.membership_function());
}

bool approx_equal(const FuzzyNumber& f, const FuzzyNumber& g, double tol) {
  return membership_distance(f, g) <= tol;
}

}  // namespace fvoi
