#pragma once

#include <cstdint>
#include <random>

#include "fvoi/decision.hpp"

namespace fvoi {

struct RandomCase {
  DecisionProblem problem;
  Experiment experiment;
};

/// Seeded generator for the randomized verification suite: 2-4 states,
/// 2-4 actions, 2-5 discrete outcomes, flat-Dirichlet priors and likelihood
/// rows, triangular utilities from sorted uniform triples in [0, 1].
class RandomProblemGenerator {
 public:
  explicit RandomProblemGenerator(std::uint64_t seed) : rng_(seed) {}

  RandomCase next();

  DecisionProblem problem(std::size_t states, std::size_t actions);
  Experiment discrete_experiment(std::size_t states, std::size_t outcomes);
  FuzzyNumber triangular_utility();
  std::vector<double> simplex(std::size_t n);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Case for one trial of the suite; trial k uses seed + k.
RandomCase random_case(std::uint64_t seed);

/// Identity likelihood: the outcome names the state.
Experiment perfectly_revealing(const DecisionProblem& p);
/// Every state yields the same outcome distribution.
Experiment uninformative(const DecisionProblem& p, std::size_t outcomes = 2);

}  // namespace fvoi
