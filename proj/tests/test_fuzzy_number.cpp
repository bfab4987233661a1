#include <gtest/gtest.h>

#include <random>

#include "fvoi/errors.hpp"
#include "fvoi/fuzzy_number.hpp"
#include "oracles.hpp"

using fvoi::Breakpoint;
using fvoi::FuzzyNumber;
using fvoi::Interval;

namespace {

std::vector<Breakpoint> pts(const FuzzyNumber& f) { return {f.breakpoints().begin(), f.breakpoints().end()}; }

}  // namespace

TEST(FuzzyNumber, DefaultIsCrispZero) {
  const FuzzyNumber zero;
  EXPECT_TRUE(zero.is_crisp());
  EXPECT_EQ(zero, FuzzyNumber::crisp(0.0));
  EXPECT_DOUBLE_EQ(zero.membership(0.0), 1.0);
  EXPECT_DOUBLE_EQ(zero.membership(1e-9), 0.0);
}

TEST(FuzzyNumber, TriangularMembershipAndCuts) {
  const auto f = FuzzyNumber::triangular(1, 2, 4);
  EXPECT_DOUBLE_EQ(f.membership(1.5), 0.5);
  EXPECT_DOUBLE_EQ(f.membership(3.0), 0.5);
  EXPECT_DOUBLE_EQ(f.membership(5.0), 0.0);
  EXPECT_EQ(f.alpha_cut(0.5), Interval(1.5, 3.0));
  EXPECT_EQ(f.alpha_cut(0.0), Interval(1, 4));
  EXPECT_EQ(f.modal_set(), Interval(2, 2));
  EXPECT_DOUBLE_EQ(f.area(), 1.5);
}

TEST(FuzzyNumber, DegenerateShapesCollapse) {
  EXPECT_EQ(FuzzyNumber::triangular(2, 2, 2), FuzzyNumber::crisp(2));
  EXPECT_EQ(pts(FuzzyNumber::triangular(0, 0, 1)), (std::vector<Breakpoint>{{0, 1}, {1, 0}}));
  EXPECT_EQ(pts(FuzzyNumber::trapezoidal(0, 1, 1, 2)), pts(FuzzyNumber::triangular(0, 1, 2)));
  // A vertical left flank: grade 1 at the lower end of the support.
  const auto f = FuzzyNumber::trapezoidal(0, 0, 1, 2);
  EXPECT_DOUBLE_EQ(f.membership(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f.membership(-1e-12), 0.0);
}

TEST(FuzzyNumber, RejectsInvalidShapes) {
  EXPECT_THROW(FuzzyNumber::triangular(2, 1, 0), fvoi::InvariantError);
  EXPECT_THROW(FuzzyNumber::crisp(std::nan("")), fvoi::InvariantError);
  // Not normalized.
  EXPECT_THROW(FuzzyNumber::from_breakpoints({{0, 0}, {1, 0.8}, {2, 0}}), fvoi::InvariantError);
  // Not quasiconcave.
  EXPECT_THROW(FuzzyNumber::from_breakpoints({{0, 0}, {1, 1}, {2, 0.2}, {3, 0.6}, {4, 0}}), fvoi::InvariantError);
  // Grade out of range, unsorted abscissas, interior boundary grade.
  EXPECT_THROW(FuzzyNumber::from_breakpoints({{0, 0}, {1, 1.5}, {2, 0}}), fvoi::InvariantError);
  EXPECT_THROW(FuzzyNumber::from_breakpoints({{1, 0}, {0, 1}, {2, 0}}), fvoi::InvariantError);
  EXPECT_THROW(FuzzyNumber::from_breakpoints({{0, 0.5}, {1, 1}, {2, 0}}), fvoi::InvariantError);
  EXPECT_THROW(FuzzyNumber::from_breakpoints({}), fvoi::InvariantError);
}

TEST(FuzzyNumber, FromBreakpointsDropsRedundantZeroRuns) {
  const auto f = FuzzyNumber::from_breakpoints({{-1, 0}, {0, 0}, {1, 1}, {2, 0}, {3, 0}});
  EXPECT_EQ(f, FuzzyNumber::triangular(0, 1, 2));
}

TEST(FuzzyNumber, AlphaCutOutsideRangeThrows) {
  const auto f = FuzzyNumber::triangular(0, 1, 2);
  EXPECT_THROW(f.alpha_cut(1.5), fvoi::InvariantError);
  EXPECT_THROW(f.alpha_cut(-0.1), fvoi::InvariantError);
}

TEST(FuzzyNumberArithmetic, TriangularSumIsComponentwise) {
  const auto s = fvoi::add(FuzzyNumber::triangular(1, 2, 4), FuzzyNumber::triangular(-1, 0, 3));
  EXPECT_EQ(s, FuzzyNumber::triangular(0, 2, 7));
  EXPECT_EQ(fvoi::add(FuzzyNumber::crisp(3), FuzzyNumber::triangular(0, 1, 2)), FuzzyNumber::triangular(3, 4, 5));
}

TEST(FuzzyNumberArithmetic, NegateScaleTranslate) {
  const auto f = FuzzyNumber::triangular(-0.5, -0.3, -0.1);
  EXPECT_EQ(fvoi::negate(f), FuzzyNumber::triangular(0.1, 0.3, 0.5));
  EXPECT_EQ(fvoi::scale(f, 0.0), FuzzyNumber::crisp(0));
  EXPECT_EQ(fvoi::scale(FuzzyNumber::triangular(1, 2, 4), -2), FuzzyNumber::triangular(-8, -4, -2));
  EXPECT_EQ(fvoi::translate(FuzzyNumber::triangular(1, 2, 4), 1), FuzzyNumber::triangular(2, 3, 5));
  EXPECT_EQ(-FuzzyNumber::crisp(0), FuzzyNumber::crisp(0));
  EXPECT_FALSE(std::signbit(fvoi::negate(FuzzyNumber::crisp(0)).breakpoints()[0].x));
}

TEST(FuzzyNumberArithmetic, SumWithSelfNegationIsSymmetric) {
  const auto f = FuzzyNumber::triangular(1, 2, 4);
  const auto d = f - f;
  EXPECT_EQ(d, FuzzyNumber::triangular(-3, 0, 3));
}

TEST(FuzzyNumberArithmetic, MixedShapeSumMergesFlanks) {
  const auto f = FuzzyNumber::from_breakpoints({{0, 0}, {1, 0.5}, {2, 1}, {3, 0}});
  const auto g = FuzzyNumber::trapezoidal(0, 1, 2, 4);
  const auto s = fvoi::add(f, g);
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Interval a = f.alpha_cut(alpha);
    const Interval b = g.alpha_cut(alpha);
    const Interval c = s.alpha_cut(alpha);
    EXPECT_NEAR(c.lo, a.lo + b.lo, 1e-15) << alpha;
    EXPECT_NEAR(c.hi, a.hi + b.hi, 1e-15) << alpha;
  }
}

// Exact alpha-cut additivity at 101 levels on random shapes.
TEST(FuzzyNumberArithmetic, AlphaCutsAddExactly) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = oracle::random_shape(rng, -1.0, 2.0, 0.05);
    const auto g = oracle::random_shape(rng, 0.5, 1.0, 0.05);
    const auto s = fvoi::add(f, g);
    const auto d = fvoi::subtract(f, g);
    for (int k = 0; k <= 100; ++k) {
      const double alpha = k / 100.0;
      const Interval a = f.alpha_cut(alpha);
      const Interval b = g.alpha_cut(alpha);
      ASSERT_NEAR(s.alpha_cut(alpha).lo, a.lo + b.lo, 1e-12);
      ASSERT_NEAR(s.alpha_cut(alpha).hi, a.hi + b.hi, 1e-12);
      ASSERT_NEAR(d.alpha_cut(alpha).lo, a.lo - b.hi, 1e-12);
      ASSERT_NEAR(d.alpha_cut(alpha).hi, a.hi - b.lo, 1e-12);
    }
  }
}

TEST(FuzzyNumberArithmetic, SumMatchesBruteForceExtensionPrinciple) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = oracle::random_shape(rng, 0.0, 1.0, 0.1);
    const auto g = oracle::random_shape(rng, -0.5, 1.0, 0.1);
    const auto s = fvoi::add(f, g);
    const auto grid = oracle::sup_min_sum(f, g, 4000);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.mu.size(); ++k) worst = std::max(worst, std::abs(s.membership(grid.at(k)) - grid.mu[k]));
    EXPECT_LE(worst, 1e-2) << "trial " << trial;
  }
}

TEST(FuzzyNumberArithmetic, ScaleDistributesOverCuts) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lam(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = oracle::random_shape(rng);
    const double l = lam(rng);
    const auto g = fvoi::scale(f, l);
    for (int k = 0; k <= 20; ++k) {
      const double alpha = k / 20.0;
      const Interval a = f.alpha_cut(alpha);
      const Interval b = g.alpha_cut(alpha);
      EXPECT_NEAR(b.lo, std::min(l * a.lo, l * a.hi), 1e-12);
      EXPECT_NEAR(b.hi, std::max(l * a.lo, l * a.hi), 1e-12);
    }
  }
}

TEST(FuzzyNumber, FromAlphaCutsRoundTrips) {
  std::mt19937_64 rng(9);
  std::vector<double> levels;
  for (int k = 0; k <= 64; ++k) levels.push_back(k / 64.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_triangle(rng);
    std::vector<Interval> cuts;
    for (double a : levels) cuts.push_back(f.alpha_cut(a));
    const auto g = FuzzyNumber::from_alpha_cuts(levels, cuts);
    EXPECT_LE(fvoi::membership_distance(f, g), 1e-9);
    EXPECT_TRUE(fvoi::approx_equal(f, g));
  }
}

TEST(FuzzyNumber, FromAlphaCutsRejectsBadInput) {
  const std::vector<double> levels{0.0, 1.0};
  const std::vector<Interval> nested_wrong{Interval(0, 1), Interval(-1, 2)};
  EXPECT_THROW(FuzzyNumber::from_alpha_cuts(levels, nested_wrong), fvoi::InvariantError);
  const std::vector<double> short_levels{0.5, 1.0};
  const std::vector<Interval> two{Interval(0, 2), Interval(1, 1)};
  EXPECT_THROW(FuzzyNumber::from_alpha_cuts(short_levels, two), fvoi::InvariantError);
}

TEST(FuzzyNumber, HammingDistanceAndArea) {
  const auto f = FuzzyNumber::triangular(0, 1, 2);
  const auto g = FuzzyNumber::triangular(1, 2, 3);
  EXPECT_NEAR(fvoi::hamming_distance(f, g), 1.5, 1e-15);
  EXPECT_DOUBLE_EQ(fvoi::area(FuzzyNumber::trapezoidal(0, 1, 2, 3)), 2.0);
  EXPECT_DOUBLE_EQ(fvoi::area(FuzzyNumber::crisp(5)), 0.0);
}
