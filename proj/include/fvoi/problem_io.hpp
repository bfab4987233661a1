#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fvoi/decision.hpp"

namespace fvoi {

struct NamedTerm {
  std::string name;
  FuzzyNumber value;

  friend bool operator==(const NamedTerm&, const NamedTerm&) = default;
};

struct NamedExperiment {
  std::string name;
  Experiment experiment;

  friend bool operator==(const NamedExperiment&, const NamedExperiment&) = default;
};

/// A parsed problem file. `utility_terms` remembers which table cells were
/// written as references to named terms so that serialization reproduces them.
struct ProblemFile {
  std::string name;
  std::vector<std::string> notes;
  std::vector<NamedTerm> terms;
  std::vector<std::vector<std::optional<std::string>>> utility_terms;
  DecisionProblem problem;
  std::vector<NamedExperiment> experiments;

  const NamedExperiment& experiment(const std::string& name) const;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Fuzzy literal forms: [[x, mu], ...], {"crisp": v}, {"tri": [a, b, c]},
/// {"trap": [a, b, c, d]} and {"points": [[x, mu], ...]}.
FuzzyNumber parse_fuzzy_literal(const nlohmann::json& j, const std::string& where = "");
nlohmann::ordered_json fuzzy_to_json(const FuzzyNumber& f);

/// `source` labels error messages; errors carry a JSON pointer to the
/// offending field.
ProblemFile parse_problem(const nlohmann::json& j, const std::string& source = "<input>");
ProblemFile parse_problem_text(const std::string& text, const std::string& source = "<input>");
ProblemFile load_problem(const std::filesystem::path& path);

nlohmann::ordered_json problem_to_json(const ProblemFile& file);

}  // namespace fvoi
