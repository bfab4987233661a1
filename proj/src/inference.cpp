#include "fvoi/inference.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <set>

#include "fvoi/errors.hpp"

namespace fvoi {
namespace {

void check_probability_vector(std::span<const double> probs, const char* what) {
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvariantError(fmt::format("{} contains an invalid probability {}", what, p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw InvariantError(fmt::format("{} sums to {}, not 1", what, sum));
  }
}

double log_gaussian_density(double x, double mean, double std) {
  const double z = (x - mean) / std;
  return -0.5 * z * z - std::log(std) - 0.5 * std::log(2.0 * std::numbers::pi);
}

}  // namespace

StateSpace::StateSpace(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InvariantError("state space is empty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw InvariantError(fmt::format("duplicate state label '{}'", n));
  }
}

std::size_t StateSpace::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InvariantError(fmt::format("unknown state '{}'", name));
  return static_cast<std::size_t>(it - names_.begin());
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvariantError("distribution is empty");
  check_probability_vector(probs_, "distribution");
}

Distribution Distribution::point_mass(std::size_t size, std::size_t at) {
  std::vector<double> p(size, 0.0);
  p.at(at) = 1.0;
  return Distribution(std::move(p));
}

Experiment Experiment::discrete(std::vector<std::string> outcomes, std::vector<std::vector<double>> likelihood) {
  if (outcomes.empty()) throw InvariantError("discrete experiment has no outcomes");
  if (likelihood.empty()) throw InvariantError("discrete experiment has no likelihood rows");
  std::set<std::string> seen;
  for (const auto& o : outcomes) {
    if (!seen.insert(o).second) throw InvariantError(fmt::format("duplicate outcome label '{}'", o));
  }
  for (std::size_t s = 0; s < likelihood.size(); ++s) {
    if (likelihood[s].size() != outcomes.size()) {
      throw InvariantError(fmt::format("likelihood row {} has {} entries, expected {}", s,
                                       likelihood[s].size(), outcomes.size()));
    }
    check_probability_vector(likelihood[s], fmt::format("likelihood row {}", s).c_str());
  }
  return Experiment(DiscreteModel{std::move(outcomes), std::move(likelihood)});
}

Experiment Experiment::gaussian(std::vector<double> means, std::vector<double> stds) {
  if (means.empty()) throw InvariantError("gaussian experiment has no states");
  if (means.size() != stds.size()) throw InvariantError("gaussian experiment needs one std per mean");
  for (std::size_t s = 0; s < means.size(); ++s) {
    if (!std::isfinite(means[s])) throw InvariantError(fmt::format("mean of state {} is not finite", s));
    if (!std::isfinite(stds[s]) || !(stds[s] > 0.0)) {
      throw InvariantError(fmt::format("std of state {} must be positive, got {}", s, stds[s]));
    }
  }
  return Experiment(GaussianModel{std::move(means), std::move(stds)});
}

const DiscreteModel& Experiment::as_discrete() const {
  if (const auto* m = std::get_if<DiscreteModel>(&model_)) return *m;
  throw InvariantError("experiment is not discrete");
}

const GaussianModel& Experiment::as_gaussian() const {
  if (const auto* m = std::get_if<GaussianModel>(&model_)) return *m;
  throw InvariantError("experiment is not gaussian");
}

std::size_t Experiment::state_count() const {
  return is_gaussian() ? as_gaussian().means.size() : as_discrete().likelihood.size();
}

void Experiment::check_states(std::size_t states) const {
  if (state_count() != states) {
    throw InvariantError(
        fmt::format("experiment describes {} states, problem has {}", state_count(), states));
  }
}

double likelihood(const Experiment& experiment, std::size_t state, const Observation& obs) {
  if (experiment.is_gaussian()) {
    const auto* value = std::get_if<RealValue>(&obs);
    if (value == nullptr) throw InvariantError("gaussian experiment needs a real-valued observation");
    if (!std::isfinite(value->x)) throw InvariantError("observation must be finite");
    const auto& m = experiment.as_gaussian();
    return std::exp(log_gaussian_density(value->x, m.means.at(state), m.stds.at(state)));
  }
  const auto* outcome = std::get_if<DiscreteOutcome>(&obs);
  if (outcome == nullptr) throw InvariantError("discrete experiment needs an outcome observation");
  const auto& m = experiment.as_discrete();
  if (outcome->index >= m.outcomes.size()) {
    throw InvariantError(fmt::format("outcome index {} out of range", outcome->index));
  }
  return m.likelihood.at(state)[outcome->index];
}

Distribution posterior(const Distribution& prior, const Experiment& experiment, const Observation& obs) {
  experiment.check_states(prior.size());
  const std::size_t n = prior.size();
  std::vector<double> w(n, 0.0);

  if (experiment.is_gaussian()) {
    const auto* value = std::get_if<RealValue>(&obs);
    if (value == nullptr) throw InvariantError("gaussian experiment needs a real-valued observation");
    if (!std::isfinite(value->x)) throw InvariantError("observation must be finite");
    const auto& m = experiment.as_gaussian();
    // Work in log space so that far-tail observations do not underflow.
    std::vector<double> logw(n, -std::numeric_limits<double>::infinity());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n; ++s) {
      if (prior[s] > 0.0) {
        logw[s] = std::log(prior[s]) + log_gaussian_density(value->x, m.means[s], m.stds[s]);
        top = std::max(top, logw[s]);
      }
    }
    for (std::size_t s = 0; s < n; ++s) w[s] = prior[s] > 0.0 ? std::exp(logw[s] - top) : 0.0;
  } else {
    for (std::size_t s = 0; s < n; ++s) w[s] = prior[s] * likelihood(experiment, s, obs);
  }

  double total = 0.0;
  for (double v : w) total += v;
  if (!(total > 0.0)) throw NumericError("observation has zero marginal probability under the prior");
  for (double& v : w) v /= total;
  return Distribution(std::move(w));
}

double marginal_probability(const Distribution& prior, const Experiment& experiment, std::size_t outcome) {
  experiment.check_states(prior.size());
  double total = 0.0;
  for (std::size_t s = 0; s < prior.size(); ++s) {
    total += prior[s] * likelihood(experiment, s, DiscreteOutcome{outcome});
  }
  return total;
}

double gaussian_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double predictive_region_prob(const Experiment& experiment, std::size_t state, std::span<const Interval> region) {
  const auto& m = experiment.as_gaussian();
  const double mean = m.means.at(state);
  const double std = m.stds.at(state);
  double total = 0.0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const Interval& iv = region[i];
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi) throw InvariantError("malformed region interval");
    if (i > 0 && iv.lo < region[i - 1].hi) throw InvariantError("region intervals must be sorted and disjoint");
    const double upper = std::isinf(iv.hi) ? (iv.hi > 0 ? 1.0 : 0.0) : gaussian_cdf((iv.hi - mean) / std);
    const double lower = std::isinf(iv.lo) ? (iv.lo > 0 ? 1.0 : 0.0) : gaussian_cdf((iv.lo - mean) / std);
    total += upper - lower;
  }
  return std::clamp(total, 0.0, 1.0);
}

double predictive_density(const Distribution& prior, const Experiment& experiment, double x) {
  const auto& m = experiment.as_gaussian();
  double total = 0.0;
  for (std::size_t s = 0; s < prior.size(); ++s) {
    if (prior[s] > 0.0) total += prior[s] * std::exp(log_gaussian_density(x, m.means[s], m.stds[s]));
  }
  return total;
}

}  // namespace fvoi
