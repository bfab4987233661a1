#include "fvoi/decision.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <set>

#include "fvoi/errors.hpp"

namespace fvoi {
namespace {

using GaussRule = boost::math::quadrature::gauss<double, 16>;

void add_flag(std::vector<std::string>& flags, const std::string& flag) {
  if (std::find(flags.begin(), flags.end(), flag) == flags.end()) flags.push_back(flag);
}

FuzzyNumber weighted_sum(const std::vector<FuzzyNumber>& values, const std::vector<double>& weights) {
  FuzzyNumber total = scale(values[0], weights[0]);
  for (std::size_t k = 1; k < values.size(); ++k) total = add(total, scale(values[k], weights[k]));
  return total;
}

// Pool-adjacent-violators fit of a nondecreasing sequence (equal weights).
std::vector<double> isotonic_nondecreasing(const std::vector<double>& y) {
  std::vector<double> level;
  std::vector<std::size_t> count;
  for (double v : y) {
    level.push_back(v);
    count.push_back(1);
    while (level.size() >= 2 && level[level.size() - 2] > level.back()) {
      const std::size_t n = count[count.size() - 2] + count.back();
      const double merged =
          (level[level.size() - 2] * static_cast<double>(count[count.size() - 2]) +
           level.back() * static_cast<double>(count.back())) /
          static_cast<double>(n);
      level.pop_back();
      count.pop_back();
      level.back() = merged;
      count.back() = n;
    }
  }
  std::vector<double> out;
  for (std::size_t b = 0; b < level.size(); ++b) out.insert(out.end(), count[b], level[b]);
  return out;
}

Interval scan_range(const GaussianModel& m) {
  const double lo = *std::min_element(m.means.begin(), m.means.end());
  const double hi = *std::max_element(m.means.begin(), m.means.end());
  const double spread = 8.0 * *std::max_element(m.stds.begin(), m.stds.end());
  return {lo - spread, hi + spread};
}

class RealLineScanner {
 public:
  RealLineScanner(const DecisionProblem& p, const Experiment& e, const RegionOptions& o)
      : problem_(p), experiment_(e), options_(o) {}

  RegionResult run() {
    if (options_.grid < 2) throw InvariantError("region scan needs at least two grid points");
    const Interval range = scan_range(experiment_.as_gaussian());
    const double step = range.width() / static_cast<double>(options_.grid - 1);

    std::vector<std::size_t> winners(options_.grid);
    std::vector<double> xs(options_.grid);
    for (std::size_t k = 0; k < options_.grid; ++k) {
      xs[k] = k + 1 == options_.grid ? range.hi : range.lo + step * static_cast<double>(k);
      winners[k] = winner(xs[k]);
    }

    RealLinePartition partition;
    partition.actions.push_back(winners[0]);
    for (std::size_t k = 0; k + 1 < options_.grid; ++k) {
      if (winners[k] != winners[k + 1]) refine(xs[k], winners[k], xs[k + 1], winners[k + 1], partition);
    }

    RegionResult result{partition, flags_};
    for (std::size_t i = 1; i < partition.cuts.size(); ++i) {
      if (partition.cuts[i] - partition.cuts[i - 1] < 2.0 * step) add_flag(result.diagnostics, diagnostic::kCloseCuts);
    }
    return result;
  }

 private:
  std::size_t winner(double x) {
    const Selection s = optimal_posterior_action(problem_, experiment_, RealValue{x}, options_.tolerance);
    if (s.cycle_resolved) add_flag(flags_, diagnostic::kCycleResolved);
    return s.index;
  }

  void refine(double a, std::size_t wa, double b, std::size_t wb, RealLinePartition& out) {
    while (b - a > options_.bisection_tolerance) {
      const double m = a + (b - a) / 2.0;
      if (m <= a || m >= b) break;
      const std::size_t wm = winner(m);
      if (wm == wa) {
        a = m;
      } else if (wm == wb) {
        b = m;
      } else {
        refine(a, wa, m, wm, out);
        refine(m, wm, b, wb, out);
        return;
      }
    }
    out.cuts.push_back(a + (b - a) / 2.0);
    out.actions.push_back(wb);
  }

  const DecisionProblem& problem_;
  const Experiment& experiment_;
  const RegionOptions& options_;
  std::vector<std::string> flags_;
};

std::vector<std::vector<double>> region_coefficients(const DecisionProblem& p, const Experiment& experiment,
                                                     const RegionPartition& regions) {
  const std::size_t n_actions = p.action_count();
  const std::size_t n_states = p.state_count();
  std::vector<std::vector<double>> coef(n_actions, std::vector<double>(n_states, 0.0));
  if (const auto* discrete = std::get_if<DiscretePartition>(&regions)) {
    const auto& model = experiment.as_discrete();
    for (std::size_t i = 0; i < n_actions; ++i) {
      for (std::size_t s = 0; s < n_states; ++s) {
        double prob = 0.0;
        for (std::size_t x = 0; x < discrete->actions.size(); ++x) {
          if (discrete->actions[x] == i) prob += model.likelihood[s][x];
        }
        coef[i][s] = p.prior()[s] * prob;
      }
    }
  } else {
    const auto& line = std::get<RealLinePartition>(regions);
    for (std::size_t i = 0; i < n_actions; ++i) {
      const std::vector<Interval> region = line.region_of(i);
      for (std::size_t s = 0; s < n_states; ++s) {
        coef[i][s] = p.prior()[s] * predictive_region_prob(experiment, s, region);
      }
    }
  }
  return coef;
}

}  // namespace

DecisionProblem::DecisionProblem(StateSpace states, std::vector<std::string> actions, Distribution prior,
                                 UtilityTable utilities)
    : states_(std::move(states)),
      actions_(std::move(actions)),
      prior_(std::move(prior)),
      utilities_(std::move(utilities)) {
  if (states_.size() == 0) throw InvariantError("decision problem has no states");
  if (actions_.empty()) throw InvariantError("decision problem has no actions");
  std::set<std::string> seen;
  for (const auto& a : actions_) {
    if (!seen.insert(a).second) throw InvariantError(fmt::format("duplicate action label '{}'", a));
  }
  if (prior_.size() != states_.size()) {
    throw InvariantError(fmt::format("prior has {} entries for {} states", prior_.size(), states_.size()));
  }
  if (utilities_.states() != states_.size() || utilities_.actions() != actions_.size()) {
    throw InvariantError(fmt::format("utility table is {}x{}, expected {}x{}", utilities_.states(),
                                     utilities_.actions(), states_.size(), actions_.size()));
  }
}

std::size_t DecisionProblem::action_index(const std::string& name) const {
  const auto it = std::find(actions_.begin(), actions_.end(), name);
  if (it == actions_.end()) throw InvariantError(fmt::format("unknown action '{}'", name));
  return static_cast<std::size_t>(it - actions_.begin());
}

DecisionProblem DecisionProblem::with_prior(Distribution prior) const {
  return DecisionProblem(states_, actions_, std::move(prior), utilities_);
}

std::vector<Interval> RealLinePartition::region_of(std::size_t action) const {
  std::vector<Interval> out;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] != action) continue;
    const double lo = i == 0 ? -inf : cuts[i - 1];
    const double hi = i == cuts.size() ? inf : cuts[i];
    if (!out.empty() && out.back().hi == lo) {
      out.back().hi = hi;
    } else {
      out.push_back({lo, hi});
    }
  }
  return out;
}

std::vector<FuzzyNumber> posterior_expected_utilities(const DecisionProblem& p, const Distribution& dist) {
  std::vector<FuzzyNumber> out;
  out.reserve(p.action_count());
  for (std::size_t a = 0; a < p.action_count(); ++a) out.push_back(expected_utility(p.utilities(), a, dist));
  return out;
}

std::vector<FuzzyNumber> prior_expected_utilities(const DecisionProblem& p) {
  return posterior_expected_utilities(p, p.prior());
}

Selection optimal_prior_action(const DecisionProblem& p, double tolerance) {
  return best_index(prior_expected_utilities(p), tolerance);
}

Selection optimal_posterior_action(const DecisionProblem& p, const Experiment& experiment, const Observation& obs,
                                   double tolerance) {
  return best_index(posterior_expected_utilities(p, posterior(p.prior(), experiment, obs)), tolerance);
}

Selection perfect_action(const DecisionProblem& p, std::size_t state, double tolerance) {
  return best_index(p.utilities().row(state), tolerance);
}

FuzzyNumber perfect_info_value(const DecisionProblem& p, double tolerance) {
  std::vector<FuzzyNumber> values;
  std::vector<double> weights;
  for (std::size_t s = 0; s < p.state_count(); ++s) {
    values.push_back(p.utilities().at(s, perfect_action(p, s, tolerance).index));
    weights.push_back(p.prior()[s]);
  }
  return weighted_sum(values, weights);
}

FuzzyNumber evpi(const DecisionProblem& p, double tolerance) {
  const auto utilities = prior_expected_utilities(p);
  const Selection best = best_index(utilities, tolerance);
  return subtract(perfect_info_value(p, tolerance), utilities[best.index]);
}

RegionResult decision_regions(const DecisionProblem& p, const Experiment& experiment, const RegionOptions& options) {
  experiment.check_states(p.state_count());
  if (!experiment.is_gaussian()) {
    if (options.override_threshold) throw InvariantError("a threshold override needs a gaussian experiment");
    const auto& model = experiment.as_discrete();
    RegionResult result{DiscretePartition{}, {}};
    auto& actions = std::get<DiscretePartition>(result.partition).actions;
    const std::size_t fallback = optimal_prior_action(p, options.tolerance).index;
    for (std::size_t x = 0; x < model.outcomes.size(); ++x) {
      if (marginal_probability(p.prior(), experiment, x) == 0.0) {
        actions.push_back(fallback);
        add_flag(result.diagnostics, diagnostic::kZeroMarginalOutcome);
        continue;
      }
      const Selection s = optimal_posterior_action(p, experiment, DiscreteOutcome{x}, options.tolerance);
      if (s.cycle_resolved) add_flag(result.diagnostics, diagnostic::kCycleResolved);
      actions.push_back(s.index);
    }
    return result;
  }

  RegionResult result = RealLineScanner(p, experiment, options).run();
  if (options.override_threshold) {
    auto& line = std::get<RealLinePartition>(result.partition);
    if (!std::isfinite(*options.override_threshold)) throw InvariantError("threshold override must be finite");
    if (line.cuts.size() != 1) {
      throw InvariantError(fmt::format("threshold override needs exactly one computed boundary, found {}",
                                       line.cuts.size()));
    }
    line.cuts[0] = *options.override_threshold;
    add_flag(result.diagnostics, diagnostic::kThresholdOverride);
  }
  return result;
}

EvsiResult evsi(const DecisionProblem& p, const Experiment& experiment, const RegionOptions& options) {
  const auto prior_utilities = prior_expected_utilities(p);
  const Selection best = best_index(prior_utilities, options.tolerance);
  RegionResult regions = decision_regions(p, experiment, options);

  EvsiResult result{FuzzyNumber{}, {}, regions.partition, best.index, regions.diagnostics};
  if (best.cycle_resolved) add_flag(result.diagnostics, diagnostic::kCycleResolved);
  result.coefficients = region_coefficients(p, experiment, regions.partition);

  std::vector<FuzzyNumber> values;
  std::vector<double> weights;
  for (std::size_t i = 0; i < p.action_count(); ++i) {
    for (std::size_t s = 0; s < p.state_count(); ++s) {
      values.push_back(p.utilities().at(s, i));
      weights.push_back(result.coefficients[i][s]);
    }
  }
  result.value = subtract(weighted_sum(values, weights), prior_utilities[best.index]);
  return result;
}

DirectResult evsi_direct(const DecisionProblem& p, const Experiment& experiment, const DirectOptions& options,
                         const RegionOptions& region_options) {
  experiment.check_states(p.state_count());
  const auto prior_utilities = prior_expected_utilities(p);
  const FuzzyNumber& baseline = prior_utilities[best_index(prior_utilities, region_options.tolerance).index];
  DirectResult result{FuzzyNumber{}, {}};

  if (!experiment.is_gaussian()) {
    const auto& model = experiment.as_discrete();
    std::optional<FuzzyNumber> total;
    for (std::size_t x = 0; x < model.outcomes.size(); ++x) {
      const double marginal = marginal_probability(p.prior(), experiment, x);
      if (marginal == 0.0) continue;
      const auto utilities = posterior_expected_utilities(p, posterior(p.prior(), experiment, DiscreteOutcome{x}));
      const Selection s = best_index(utilities, region_options.tolerance);
      if (s.cycle_resolved) add_flag(result.diagnostics, diagnostic::kCycleResolved);
      const FuzzyNumber term = scale(utilities[s.index], marginal);
      total = total ? add(*total, term) : term;
    }
    result.value = subtract(*total, baseline);
    return result;
  }

  if (options.levels < 2) throw InvariantError("direct EVSI needs at least two grade levels");
  if (options.nodes == 0) throw InvariantError("direct EVSI needs at least one quadrature node");
  std::vector<double> levels(options.levels);
  for (std::size_t k = 0; k < options.levels; ++k) {
    levels[k] = k + 1 == options.levels ? 1.0 : static_cast<double>(k) / static_cast<double>(options.levels - 1);
  }

  RegionOptions scan = region_options;
  scan.override_threshold.reset();
  const RegionResult regions = decision_regions(p, experiment, scan);
  const auto& line = std::get<RealLinePartition>(regions.partition);
  const Interval range = scan_range(experiment.as_gaussian());
  std::vector<double> edges{range.lo};
  for (double c : line.cuts) {
    if (c > range.lo && c < range.hi) edges.push_back(c);
  }
  edges.push_back(range.hi);

  const auto& abscissa = GaussRule::abscissa();
  const auto& weights = GaussRule::weights();
  const std::size_t panels = std::max<std::size_t>(1, (options.nodes + 15) / 16);

  std::vector<double> lo(options.levels, 0.0);
  std::vector<double> hi(options.levels, 0.0);
  auto accumulate = [&](double x, double w) {
    const auto utilities = posterior_expected_utilities(p, posterior(p.prior(), experiment, RealValue{x}));
    const Selection s = best_index(utilities, region_options.tolerance);
    if (s.cycle_resolved) add_flag(result.diagnostics, diagnostic::kCycleResolved);
    const double mass = w * predictive_density(p.prior(), experiment, x);
    for (std::size_t k = 0; k < options.levels; ++k) {
      const Interval cut = utilities[s.index].alpha_cut(levels[k]);
      lo[k] += mass * cut.lo;
      hi[k] += mass * cut.hi;
    }
  };
  for (std::size_t r = 0; r + 1 < edges.size(); ++r) {
    const double width = (edges[r + 1] - edges[r]) / static_cast<double>(panels);
    for (std::size_t q = 0; q < panels; ++q) {
      const double a = edges[r] + width * static_cast<double>(q);
      const double half = width / 2.0;
      const double mid = a + half;
      for (std::size_t n = 0; n < abscissa.size(); ++n) {
        accumulate(mid - half * abscissa[n], half * weights[n]);
        accumulate(mid + half * abscissa[n], half * weights[n]);
      }
    }
  }

  const std::vector<double> lo_fit = isotonic_nondecreasing(lo);
  std::vector<double> neg_hi(hi.size());
  std::transform(hi.begin(), hi.end(), neg_hi.begin(), [](double v) { return -v; });
  std::vector<double> hi_fit = isotonic_nondecreasing(neg_hi);
  std::transform(hi_fit.begin(), hi_fit.end(), hi_fit.begin(), [](double v) { return -v; });
  if (lo_fit != lo || hi_fit != hi) add_flag(result.diagnostics, diagnostic::kIsotonicRepair);

  std::vector<Interval> cuts;
  for (std::size_t k = 0; k < options.levels; ++k) {
    double a = lo_fit[k];
    double b = hi_fit[k];
    if (a > b) {
      a = b = (a + b) / 2.0;
      add_flag(result.diagnostics, diagnostic::kIsotonicRepair);
    }
    cuts.push_back({a, b});
  }
  // Crossing repairs above can break nesting by rounding; enforce it.
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    cuts[k].lo = std::max(cuts[k].lo, cuts[k - 1].lo);
    cuts[k].hi = std::max(cuts[k].lo, std::min(cuts[k].hi, cuts[k - 1].hi));
  }
  result.value = subtract(FuzzyNumber::from_alpha_cuts(levels, cuts), baseline);
  return result;
}

DecisionProblem affine_transform(const DecisionProblem& p, double lambda, double beta) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvariantError(fmt::format("affine transform needs a positive scale, got {}", lambda));
  }
  std::vector<std::vector<FuzzyNumber>> rows;
  for (std::size_t s = 0; s < p.state_count(); ++s) {
    std::vector<FuzzyNumber> row;
    for (const auto& u : p.utilities().row(s)) row.push_back(translate(scale(u, lambda), beta));
    rows.push_back(std::move(row));
  }
  return DecisionProblem(p.states(), p.actions(), p.prior(), UtilityTable(std::move(rows)));
}

ValueReport verify_theorem51(const DecisionProblem& p, const Experiment& experiment, const RegionOptions& options) {
  EvsiResult sample = evsi(p, experiment, options);
  ValueReport report;
  report.evpi = evpi(p, options.tolerance);
  report.evsi = sample.value;
  report.r_evpi_vs_evsi = kolodziejczyk_r(report.evpi, report.evsi);
  report.r_evsi_vs_zero = kolodziejczyk_r(report.evsi, FuzzyNumber::crisp(0.0));
  report.theorem_holds =
      report.r_evpi_vs_evsi <= 0.5 + options.tolerance && report.r_evsi_vs_zero <= 0.5 + options.tolerance;
  report.regions = std::move(sample.regions);
  report.prior_best = sample.prior_best;
  report.coefficients = std::move(sample.coefficients);
  report.diagnostics = std::move(sample.diagnostics);
  return report;
}

ExperimentComparison compare_experiments(const DecisionProblem& p, std::span<const Experiment> experiments,
                                         const RegionOptions& options) {
  ExperimentComparison out;
  std::vector<FuzzyNumber> ok_values;
  std::vector<std::size_t> ok_index;
  for (std::size_t e = 0; e < experiments.size(); ++e) {
    try {
      FuzzyNumber value = evsi(p, experiments[e], options).value;
      ok_values.push_back(value);
      ok_index.push_back(e);
      out.evsi.emplace_back(std::move(value));
      out.errors.emplace_back();
    } catch (const Error& err) {
      out.evsi.emplace_back(std::nullopt);
      out.errors.emplace_back(err.what());
    }
  }
  if (!ok_values.empty()) {
    for (std::size_t k : rank_order(ok_values, options.tolerance)) out.ranking.push_back(ok_index[k]);
  }
  const std::size_t n = experiments.size();
  out.r_matrix.assign(n, std::vector<std::optional<double>>(n));
  const auto r = pairwise_r(ok_values);
  for (std::size_t i = 0; i < ok_index.size(); ++i) {
    for (std::size_t j = 0; j < ok_index.size(); ++j) out.r_matrix[ok_index[i]][ok_index[j]] = r[i][j];
  }
  return out;
}

}  // namespace fvoi
