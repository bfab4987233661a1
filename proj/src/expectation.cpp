#include "fvoi/expectation.hpp"

#include <cmath>
#include <fmt/format.h>

#include "fvoi/errors.hpp"

namespace fvoi {

SimpleFRV::SimpleFRV(std::vector<FuzzyNumber> values, std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
  if (values_.empty()) throw InvariantError("simple FRV needs at least one value");
  if (values_.size() != probs_.size()) {
    throw InvariantError(fmt::format("simple FRV has {} values but {} probabilities", values_.size(), probs_.size()));
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw InvariantError(fmt::format("invalid probability {}", p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw InvariantError(fmt::format("simple FRV probabilities sum to {}, not 1", sum));
  }
}

FuzzyNumber expected_value(const SimpleFRV& v) {
  FuzzyNumber total = scale(v.values()[0], v.probs()[0]);
  for (std::size_t j = 1; j < v.values().size(); ++j) {
    total = add(total, scale(v.values()[j], v.probs()[j]));
  }
  return total;
}

UtilityTable::UtilityTable(std::vector<std::vector<FuzzyNumber>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InvariantError("utility table has no states");
  if (rows_.front().empty()) throw InvariantError("utility table has no actions");
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    if (rows_[s].size() != rows_.front().size()) {
      throw InvariantError(fmt::format("utility row {} has {} entries, expected {}", s, rows_[s].size(),
                                       rows_.front().size()));
    }
  }
}

const FuzzyNumber& UtilityTable::at(std::size_t state, std::size_t action) const {
  if (state >= states() || action >= actions()) {
    throw InvariantError(fmt::format("no utility entry for state {} and action {}", state, action));
  }
  return rows_[state][action];
}

std::vector<FuzzyNumber> UtilityTable::column(std::size_t action) const {
  std::vector<FuzzyNumber> out;
  for (std::size_t s = 0; s < states(); ++s) out.push_back(at(s, action));
  return out;
}

FuzzyNumber expected_utility(const UtilityTable& utilities, std::size_t action, const Distribution& dist) {
  if (dist.size() != utilities.states()) {
    throw InvariantError(
        fmt::format("distribution covers {} states, utility table {}", dist.size(), utilities.states()));
  }
  return expected_value(SimpleFRV(utilities.column(action), {dist.probs().begin(), dist.probs().end()}));
}

}  // namespace fvoi
