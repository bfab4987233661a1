#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fvoi/expectation.hpp"
#include "fvoi/fuzzy_number.hpp"
#include "fvoi/inference.hpp"
#include "fvoi/ranking.hpp"

namespace fvoi {

/// Finite state space, prior, finite action set and a total fuzzy utility
/// table U(θ, a).
class DecisionProblem {
 public:
  DecisionProblem(StateSpace states, std::vector<std::string> actions, Distribution prior, UtilityTable utilities);

  const StateSpace& states() const { return states_; }
  const std::vector<std::string>& actions() const { return actions_; }
  const Distribution& prior() const { return prior_; }
  const UtilityTable& utilities() const { return utilities_; }

  std::size_t state_count() const { return states_.size(); }
  std::size_t action_count() const { return actions_.size(); }
  std::size_t action_index(const std::string& name) const;

  DecisionProblem with_prior(Distribution prior) const;

  friend bool operator==(const DecisionProblem&, const DecisionProblem&) = default;

 private:
  StateSpace states_;
  std::vector<std::string> actions_;
  Distribution prior_;
  UtilityTable utilities_;
};

/// Action chosen for each outcome of a discrete experiment.
struct DiscretePartition {
  std::vector<std::size_t> actions;

  friend bool operator==(const DiscretePartition&, const DiscretePartition&) = default;
};

/// Ascending cut points c_1 < ... < c_k splitting the line into k + 1
/// intervals; actions[i] is posterior-optimal on the i-th interval.
struct RealLinePartition {
  std::vector<double> cuts;
  std::vector<std::size_t> actions;

  /// The set X(a) as a sorted union of intervals.
  std::vector<Interval> region_of(std::size_t action) const;

  friend bool operator==(const RealLinePartition&, const RealLinePartition&) = default;
};

using RegionPartition = std::variant<DiscretePartition, RealLinePartition>;

namespace diagnostic {
inline constexpr const char* kCycleResolved = "cycle-resolved";
inline constexpr const char* kCloseCuts = "close-cuts";
inline constexpr const char* kZeroMarginalOutcome = "zero-marginal-outcome";
inline constexpr const char* kIsotonicRepair = "isotonic-repair";
inline constexpr const char* kThresholdOverride = "threshold-override";
}  // namespace diagnostic

struct RegionOptions {
  std::size_t grid = 512;              // scan points over the observation range
  double bisection_tolerance = 1e-9;   // final width of each bracketed boundary
  std::optional<double> override_threshold;
  double tolerance = kIndifferenceTolerance;
};

struct DirectOptions {
  std::size_t levels = 33;  // uniform grades in [0, 1]
  std::size_t nodes = 256;  // Gauss-Legendre nodes per region
};

struct RegionResult {
  RegionPartition partition;
  std::vector<std::string> diagnostics;
};

struct EvsiResult {
  FuzzyNumber value;
  /// coefficients[i][θ] = ξ(θ) · P_θ(X(a_i)).
  std::vector<std::vector<double>> coefficients;
  RegionPartition regions;
  std::size_t prior_best = 0;
  std::vector<std::string> diagnostics;
};

struct DirectResult {
  FuzzyNumber value;
  std::vector<std::string> diagnostics;
};

/// Everything needed to check EVPI ≽ EVSI ≽ 0̃ for one experiment.
struct ValueReport {
  FuzzyNumber evpi;
  FuzzyNumber evsi;
  double r_evpi_vs_evsi = 0.5;
  double r_evsi_vs_zero = 0.5;
  bool theorem_holds = false;
  RegionPartition regions;
  std::size_t prior_best = 0;
  std::vector<std::vector<double>> coefficients;
  std::vector<std::string> diagnostics;
};

struct ExperimentComparison {
  std::vector<std::optional<FuzzyNumber>> evsi;  // empty where the experiment failed
  std::vector<std::string> errors;               // empty string where it succeeded
  std::vector<std::size_t> ranking;              // successful experiments, best first
  std::vector<std::vector<std::optional<double>>> r_matrix;
};

std::vector<FuzzyNumber> prior_expected_utilities(const DecisionProblem& p);
Selection optimal_prior_action(const DecisionProblem& p, double tolerance = kIndifferenceTolerance);

std::vector<FuzzyNumber> posterior_expected_utilities(const DecisionProblem& p, const Distribution& posterior);
Selection optimal_posterior_action(const DecisionProblem& p, const Experiment& experiment, const Observation& obs,
                                   double tolerance = kIndifferenceTolerance);

Selection perfect_action(const DecisionProblem& p, std::size_t state, double tolerance = kIndifferenceTolerance);
FuzzyNumber perfect_info_value(const DecisionProblem& p, double tolerance = kIndifferenceTolerance);
FuzzyNumber evpi(const DecisionProblem& p, double tolerance = kIndifferenceTolerance);

/// The sets X(a_i) on which each action is posterior-optimal.
///
/// Discrete experiments are solved outcome by outcome. Gaussian experiments
/// are scanned on a uniform grid over [min mean − 8 max σ, max mean + 8 max σ]
/// and every change of winner is bisected down to the requested tolerance;
/// the outermost intervals extend to ±∞. At exact indifference the lower
/// action index wins.
RegionResult decision_regions(const DecisionProblem& p, const Experiment& experiment,
                              const RegionOptions& options = {});

/// EVSI in partition form, Σ_i Σ_θ ξ(θ) P_θ(X(a_i)) · U(θ, a_i) − E[U(a*|ξ)],
/// summed action-major then state.
EvsiResult evsi(const DecisionProblem& p, const Experiment& experiment, const RegionOptions& options = {});

/// EVSI by integrating the optimal posterior expected utility over the
/// observation space. Discrete experiments use the exact finite sum; Gaussian
/// experiments integrate alpha-cut endpoints on a grade grid with composite
/// Gauss-Legendre quadrature. Independent of `evsi` except for using the
/// region boundaries as panel edges.
DirectResult evsi_direct(const DecisionProblem& p, const Experiment& experiment, const DirectOptions& options = {},
                         const RegionOptions& regions = {});

/// Maps every utility through u ↦ λu + β.
DecisionProblem affine_transform(const DecisionProblem& p, double lambda, double beta);

ValueReport verify_theorem51(const DecisionProblem& p, const Experiment& experiment,
                             const RegionOptions& options = {});

ExperimentComparison compare_experiments(const DecisionProblem& p, std::span<const Experiment> experiments,
                                         const RegionOptions& options = {});

}  // namespace fvoi
