#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fvoi/decision.hpp"
#include "fvoi/problem_io.hpp"

namespace fvoi {

inline constexpr const char* kToolName = "fuzzy-voi";
inline constexpr const char* kToolVersion = "1.0.0";

/// Rounds to 10 significant digits, the precision of every printed float.
double round10(double v);

/// Invocation echoed at the top of each report; `file` is a basename.
struct CommandEcho {
  std::string command;
  std::string file;
  nlohmann::ordered_json options = nlohmann::ordered_json::object();
};

nlohmann::ordered_json fuzzy_report(const FuzzyNumber& f);
nlohmann::ordered_json regions_report(const RegionPartition& regions, const DecisionProblem& p,
                                      const Experiment& experiment);

nlohmann::ordered_json analyze_report(const CommandEcho& echo, const ProblemFile& file,
                                      const RegionOptions& options = {});
nlohmann::ordered_json posterior_report(const CommandEcho& echo, const ProblemFile& file,
                                        const NamedExperiment& experiment, const Observation& obs);
nlohmann::ordered_json evpi_report(const CommandEcho& echo, const ProblemFile& file);

struct EvsiRun {
  ValueReport value;
  DirectResult direct;
  double max_endpoint_gap = 0.0;  // over the direct path's grade levels
};
EvsiRun run_evsi(const DecisionProblem& p, const Experiment& experiment, const RegionOptions& regions,
                 const DirectOptions& direct);
nlohmann::ordered_json evsi_report(const CommandEcho& echo, const ProblemFile& file,
                                   const NamedExperiment& experiment, const EvsiRun& run);

nlohmann::ordered_json compare_report(const CommandEcho& echo, const ProblemFile& file,
                                      const ExperimentComparison& comparison);

struct CheckOutcome {
  std::uint64_t seed = 0;
  bool passed = false;
  double r_evpi_vs_evsi = 0.5;
  double r_evsi_vs_zero = 0.5;
  std::string error;
};
nlohmann::ordered_json check_report(const CommandEcho& echo, const std::vector<CheckOutcome>& outcomes);

/// Indented plain-text rendering of a report; floats use 10 significant
/// digits and fuzzy numbers print as breakpoint lists.
std::string render_text(const nlohmann::ordered_json& report);

/// Machine-readable rendering: two-space indented JSON plus a newline.
std::string render_json(const nlohmann::ordered_json& report);

}  // namespace fvoi
