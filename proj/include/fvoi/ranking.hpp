#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fvoi/fuzzy_number.hpp"
#include "fvoi/piecewise_linear.hpp"

namespace fvoi {

inline constexpr double kIndifferenceTolerance = 1e-9;

enum class Direction { kNondecreasing, kNonincreasing };

/// Monotone envelope of a membership function, with tail limits 0 and 1.
struct MonotoneProfile {
  PiecewiseLinear function;
  Direction direction = Direction::kNondecreasing;
};

/// "More than or equal to F": the nondecreasing envelope sup_{u <= w} μ_F(u).
MonotoneProfile geq_profile(const FuzzyNumber& f);
/// "Less than or equal to F": the nonincreasing envelope sup_{u >= w} μ_F(u).
MonotoneProfile leq_profile(const FuzzyNumber& f);

/// The five Hamming distances entering the Kołodziejczyk coefficient.
///
/// The extended maximum of two nondecreasing profiles is their pointwise
/// minimum and that of two nonincreasing profiles their pointwise maximum, so
///   d1 = ∫ max(0, ≥U − ≥V),  d2 = ∫ max(0, ≤V − ≤U),  d3 = ∫ min(μU, μV),
///   d4 = ∫ |≥U − ≥V|,        d5 = ∫ |≤U − ≤V|.
/// Under this reading disjoint U < V gives R(U, V) = 1 and U = V gives 0.5.
struct RankingDistances {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
  double d5 = 0.0;
};

RankingDistances kolodziejczyk_distances(const FuzzyNumber& u, const FuzzyNumber& v);

/// Degree of truth of "U is not higher than V", in [0, 1]. Returns 0.5 when
/// the denominator vanishes (both arguments the same crisp point).
double kolodziejczyk_r(const FuzzyNumber& u, const FuzzyNumber& v);

enum class Verdict { kFirstPreferred, kSecondPreferred, kIndifferent };

struct Preference {
  double r = 0.5;
  Verdict verdict = Verdict::kIndifferent;
};

Preference prefer(const FuzzyNumber& u, const FuzzyNumber& v, double tolerance = kIndifferenceTolerance);

/// U ≽ V, i.e. R(U, V) <= 0.5 + tolerance.
bool preferred_or_indifferent(const FuzzyNumber& u, const FuzzyNumber& v,
                              double tolerance = kIndifferenceTolerance);

struct Selection {
  std::size_t index = 0;
  bool cycle_resolved = false;  // no element was ≽ all others; Copeland fallback used
  bool tied = false;            // another element is indifferent to the selected one
};

/// Lowest index whose element is ≽ every candidate. When the relation has a
/// cycle and no such element exists, the Copeland winner (most strict wins,
/// lowest index on ties) is returned and flagged.
Selection best_index(std::span<const FuzzyNumber> candidates, double tolerance = kIndifferenceTolerance);

/// matrix[i][j] = R(candidates[i], candidates[j]).
std::vector<std::vector<double>> pairwise_r(std::span<const FuzzyNumber> candidates);

/// Complete order by repeated best_index over the remaining candidates.
std::vector<std::size_t> rank_order(std::span<const FuzzyNumber> candidates,
                                    double tolerance = kIndifferenceTolerance);

}  // namespace fvoi
