#pragma once

#include <cstddef>
#include <vector>

#include "fvoi/fuzzy_number.hpp"
#include "fvoi/inference.hpp"

namespace fvoi {

/// A fuzzy random variable taking finitely many values, each with the
/// probability of the cell of the partition it is attached to.
class SimpleFRV {
 public:
  SimpleFRV(std::vector<FuzzyNumber> values, std::vector<double> probs);

  const std::vector<FuzzyNumber>& values() const { return values_; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<FuzzyNumber> values_;
  std::vector<double> probs_;
};

/// Σ_j p_j · V_j, folded left to right in declared order. Zero-probability
/// terms contribute crisp(0).
FuzzyNumber expected_value(const SimpleFRV& v);

/// Utility table U(θ, a): one row per state, one column per action.
class UtilityTable {
 public:
  UtilityTable() = default;
  explicit UtilityTable(std::vector<std::vector<FuzzyNumber>> rows);

  std::size_t states() const { return rows_.size(); }
  std::size_t actions() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const FuzzyNumber& at(std::size_t state, std::size_t action) const;
  const std::vector<FuzzyNumber>& row(std::size_t state) const { return rows_.at(state); }
  std::vector<FuzzyNumber> column(std::size_t action) const;

  friend bool operator==(const UtilityTable&, const UtilityTable&) = default;

 private:
  std::vector<std::vector<FuzzyNumber>> rows_;
};

/// Expected fuzzy utility of `action` under `dist` (prior or posterior).
FuzzyNumber expected_utility(const UtilityTable& utilities, std::size_t action, const Distribution& dist);

}  // namespace fvoi
