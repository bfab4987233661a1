#include "fvoi/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fvoi/errors.hpp"

namespace fvoi {
namespace {

std::vector<Point> to_points(std::span<const Breakpoint> pts) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({p.x, p.grade});
  return out;
}

}  // namespace

MonotoneProfile geq_profile(const FuzzyNumber& f) {
  const auto pts = f.breakpoints().first(f.first_modal() + 1);
  return {PiecewiseLinear(to_points(pts), 0.0, 1.0), Direction::kNondecreasing};
}

MonotoneProfile leq_profile(const FuzzyNumber& f) {
  const auto pts = f.breakpoints().subspan(f.last_modal());
  return {PiecewiseLinear(to_points(pts), 1.0, 0.0), Direction::kNonincreasing};
}

RankingDistances kolodziejczyk_distances(const FuzzyNumber& u, const FuzzyNumber& v) {
  const PiecewiseLinear geq_u = geq_profile(u).function;
  const PiecewiseLinear geq_v = geq_profile(v).function;
  const PiecewiseLinear leq_u = leq_profile(u).function;
  const PiecewiseLinear leq_v = leq_profile(v).function;
  RankingDistances d;
  d.d1 = positive_part_integral(geq_u, geq_v);
  d.d2 = positive_part_integral(leq_v, leq_u);
  d.d3 = min_integral(u.membership_function(), v.membership_function());
  d.d4 = hamming_distance(geq_u, geq_v);
  d.d5 = hamming_distance(leq_u, leq_v);
  return d;
}

double kolodziejczyk_r(const FuzzyNumber& u, const FuzzyNumber& v) {
  const RankingDistances d = kolodziejczyk_distances(u, v);
  const double denominator = d.d4 + d.d5 + 2.0 * d.d3;
  if (denominator < 1e-12) return 0.5;
  return std::clamp((d.d1 + d.d2 + d.d3) / denominator, 0.0, 1.0);
}

Preference prefer(const FuzzyNumber& u, const FuzzyNumber& v, double tolerance) {
  const double r = kolodziejczyk_r(u, v);
  Verdict verdict = Verdict::kIndifferent;
  if (r < 0.5 - tolerance) {
    verdict = Verdict::kFirstPreferred;
  } else if (r > 0.5 + tolerance) {
    verdict = Verdict::kSecondPreferred;
  }
  return {r, verdict};
}

bool preferred_or_indifferent(const FuzzyNumber& u, const FuzzyNumber& v, double tolerance) {
  return kolodziejczyk_r(u, v) <= 0.5 + tolerance;
}

std::vector<std::vector<double>> pairwise_r(std::span<const FuzzyNumber> candidates) {
  const std::size_t n = candidates.size();
  std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.5));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      r[i][j] = kolodziejczyk_r(candidates[i], candidates[j]);
      r[j][i] = kolodziejczyk_r(candidates[j], candidates[i]);
    }
  }
  return r;
}

Selection best_index(std::span<const FuzzyNumber> candidates, double tolerance) {
  if (candidates.empty()) throw InvariantError("best_index needs at least one candidate");
  const std::size_t n = candidates.size();
  const auto r = pairwise_r(candidates);

  auto tied_with_other = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && std::abs(r[i][j] - 0.5) <= tolerance) return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    bool dominates_all = true;
    for (std::size_t j = 0; j < n && dominates_all; ++j) {
      dominates_all = r[i][j] <= 0.5 + tolerance;
    }
    if (dominates_all) return {i, false, tied_with_other(i)};
  }

  std::vector<std::size_t> wins(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i][j] < 0.5 - tolerance) ++wins[i];
    }
  }
  const auto best = static_cast<std::size_t>(std::max_element(wins.begin(), wins.end()) - wins.begin());
  return {best, true, tied_with_other(best)};
}

std::vector<std::size_t> rank_order(std::span<const FuzzyNumber> candidates, double tolerance) {
  std::vector<std::size_t> remaining(candidates.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::size_t> order;
  while (!remaining.empty()) {
    std::vector<FuzzyNumber> pool;
    for (std::size_t k : remaining) pool.push_back(candidates[k]);
    const std::size_t pick = best_index(pool, tolerance).index;
    order.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return order;
}

}  // namespace fvoi
