#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fvoi/fuzzy_number.hpp"

namespace fvoi {

inline constexpr double kProbabilitySumTolerance = 1e-9;

class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// Throws InvariantError for an unknown label.
  std::size_t index_of(const std::string& name) const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  std::vector<std::string> names_;
};

/// Probability vector over a finite state space.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<double> probs);

  static Distribution point_mass(std::size_t size, std::size_t at);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probs_;
};

/// Finite outcome set with likelihood P_θ(x): one row per state.
struct DiscreteModel {
  std::vector<std::string> outcomes;
  std::vector<std::vector<double>> likelihood;

  friend bool operator==(const DiscreteModel&, const DiscreteModel&) = default;
};

/// One normal observation per state, X | θ ~ N(means[θ], stds[θ]²).
struct GaussianModel {
  std::vector<double> means;
  std::vector<double> stds;

  friend bool operator==(const GaussianModel&, const GaussianModel&) = default;
};

class Experiment {
 public:
  using Model = std::variant<DiscreteModel, GaussianModel>;

  static Experiment discrete(std::vector<std::string> outcomes, std::vector<std::vector<double>> likelihood);
  static Experiment gaussian(std::vector<double> means, std::vector<double> stds);

  bool is_gaussian() const { return std::holds_alternative<GaussianModel>(model_); }
  const Model& model() const { return model_; }
  const DiscreteModel& as_discrete() const;
  const GaussianModel& as_gaussian() const;
  std::size_t state_count() const;
  /// Throws InvariantError unless the model covers exactly `states` states.
  void check_states(std::size_t states) const;

  friend bool operator==(const Experiment&, const Experiment&) = default;

 private:
  explicit Experiment(Model model) : model_(std::move(model)) {}
  Model model_;
};

struct DiscreteOutcome {
  std::size_t index = 0;
};

struct RealValue {
  double x = 0.0;
};

using Observation = std::variant<DiscreteOutcome, RealValue>;

/// Table lookup, or the Gaussian density at the observed value.
double likelihood(const Experiment& experiment, std::size_t state, const Observation& obs);

/// Bayes update. Throws NumericError when the observation has zero marginal
/// probability under the prior.
Distribution posterior(const Distribution& prior, const Experiment& experiment, const Observation& obs);

/// Marginal probability Σ_θ ξ(θ) P_θ(x) of a discrete outcome.
double marginal_probability(const Distribution& prior, const Experiment& experiment, std::size_t outcome);

/// Standard normal CDF, accurate to about 1e-16 absolute.
double gaussian_cdf(double z);

/// P_θ(region) for a Gaussian experiment. The region is a union of sorted,
/// disjoint intervals whose endpoints may be infinite.
double predictive_region_prob(const Experiment& experiment, std::size_t state, std::span<const Interval> region);

/// Predictive density Σ_θ ξ(θ) φ(x; m_θ, σ_θ) of a Gaussian experiment.
double predictive_density(const Distribution& prior, const Experiment& experiment, double x);

}  // namespace fvoi
