#include "fvoi/random_problem.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>

namespace fvoi {

std::vector<double> RandomProblemGenerator::simplex(std::size_t n) {
  // Normalized unit exponentials are uniform on the simplex.
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) {
    v = exp1(rng_);
    total += v;
  }
  for (double& v : w) v /= total;
  // Push the rounding residue into the largest entry so the sum is 1.
  double sum = 0.0;
  for (double v : w) sum += v;
  *std::max_element(w.begin(), w.end()) += 1.0 - sum;
  return w;
}

FuzzyNumber RandomProblemGenerator::triangular_utility() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, 3> t{unit(rng_), unit(rng_), unit(rng_)};
  std::sort(t.begin(), t.end());
  return FuzzyNumber::triangular(t[0], t[1], t[2]);
}

DecisionProblem RandomProblemGenerator::problem(std::size_t states, std::size_t actions) {
  std::vector<std::string> state_names;
  for (std::size_t s = 0; s < states; ++s) state_names.push_back(fmt::format("s{}", s + 1));
  std::vector<std::string> action_names;
  for (std::size_t a = 0; a < actions; ++a) action_names.push_back(fmt::format("a{}", a + 1));
  Distribution prior(simplex(states));
  std::vector<std::vector<FuzzyNumber>> rows(states);
  for (auto& row : rows) {
    for (std::size_t a = 0; a < actions; ++a) row.push_back(triangular_utility());
  }
  return DecisionProblem(StateSpace(std::move(state_names)), std::move(action_names), std::move(prior),
                         UtilityTable(std::move(rows)));
}

Experiment RandomProblemGenerator::discrete_experiment(std::size_t states, std::size_t outcomes) {
  std::vector<std::string> names;
  for (std::size_t x = 0; x < outcomes; ++x) names.push_back(fmt::format("x{}", x + 1));
  std::vector<std::vector<double>> rows;
  for (std::size_t s = 0; s < states; ++s) rows.push_back(simplex(outcomes));
  return Experiment::discrete(std::move(names), std::move(rows));
}

RandomCase RandomProblemGenerator::next() {
  std::uniform_int_distribution<std::size_t> states(2, 4);
  std::uniform_int_distribution<std::size_t> actions(2, 4);
  std::uniform_int_distribution<std::size_t> outcomes(2, 5);
  const std::size_t n_states = states(rng_);
  const std::size_t n_actions = actions(rng_);
  const std::size_t n_outcomes = outcomes(rng_);
  DecisionProblem p = problem(n_states, n_actions);
  Experiment e = discrete_experiment(n_states, n_outcomes);
  return {std::move(p), std::move(e)};
}

RandomCase random_case(std::uint64_t seed) { return RandomProblemGenerator(seed).next(); }

Experiment perfectly_revealing(const DecisionProblem& p) {
  const std::size_t n = p.state_count();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) rows[s][s] = 1.0;
  return Experiment::discrete(p.states().names(), std::move(rows));
}

Experiment uninformative(const DecisionProblem& p, std::size_t outcomes) {
  std::vector<std::string> names;
  for (std::size_t x = 0; x < outcomes; ++x) names.push_back(fmt::format("x{}", x + 1));
  std::vector<double> row(outcomes, 1.0 / static_cast<double>(outcomes));
  return Experiment::discrete(std::move(names), std::vector<std::vector<double>>(p.state_count(), row));
}

}  // namespace fvoi
