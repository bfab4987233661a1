#include "fvoi/report.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>
#include <string>

#include "fvoi/errors.hpp"

namespace fvoi {
namespace {

using nlohmann::ordered_json;

ordered_json tool_json() { return {{"name", kToolName}, {"version", kToolVersion}}; }

ordered_json header(const CommandEcho& echo, const ProblemFile* file) {
  ordered_json out;
  out["tool"] = tool_json();
  out["command"] = {{"name", echo.command}, {"file", echo.file}, {"options", echo.options}};
  if (file != nullptr) {
    out["problem"] = file->name;
    out["notes"] = file->notes;
  }
  return out;
}

ordered_json selection_json(const Selection& s, const std::vector<std::string>& labels) {
  return {{"action", labels[s.index]}, {"tied", s.tied}, {"cycle_resolved", s.cycle_resolved}};
}

ordered_json r_matrix_json(const std::vector<std::vector<double>>& r) {
  ordered_json out = ordered_json::array();
  for (const auto& row : r) {
    ordered_json line = ordered_json::array();
    for (double v : row) line.push_back(round10(v));
    out.push_back(line);
  }
  return out;
}

ordered_json labelled_values(const std::vector<std::string>& labels, const std::vector<FuzzyNumber>& values) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({{"action", labels[i]}, {"value", fuzzy_report(values[i])}});
  }
  return out;
}

ordered_json bound(double v) { return std::isinf(v) ? ordered_json(nullptr) : ordered_json(round10(v)); }

ordered_json coefficients_json(const std::vector<std::vector<double>>& coef, const DecisionProblem& p) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < coef.size(); ++i) {
    for (std::size_t s = 0; s < coef[i].size(); ++s) {
      out.push_back({{"action", p.actions()[i]}, {"state", p.states().name(s)}, {"weight", round10(coef[i][s])}});
    }
  }
  return out;
}

ordered_json value_json(const ValueReport& v, const DecisionProblem& p, const Experiment& experiment) {
  ordered_json out;
  out["regions"] = regions_report(v.regions, p, experiment);
  out["coefficients"] = coefficients_json(v.coefficients, p);
  out["evsi"] = fuzzy_report(v.evsi);
  out["r_evpi_vs_evsi"] = round10(v.r_evpi_vs_evsi);
  out["r_evsi_vs_zero"] = round10(v.r_evsi_vs_zero);
  out["theorem_holds"] = v.theorem_holds;
  out["diagnostics"] = v.diagnostics;
  return out;
}

double max_cut_gap(const FuzzyNumber& a, const FuzzyNumber& b, std::size_t levels) {
  double gap = 0.0;
  for (std::size_t k = 0; k < levels; ++k) {
    const double alpha = levels == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(levels - 1);
    const Interval ca = a.alpha_cut(alpha);
    const Interval cb = b.alpha_cut(alpha);
    gap = std::max({gap, std::abs(ca.lo - cb.lo), std::abs(ca.hi - cb.hi)});
  }
  return gap;
}

// Keys whose values are fuzzy numbers, printed as (w, mu) breakpoint lists.
bool is_fuzzy_key(const std::string& key) {
  static const std::set<std::string> keys{"value", "evpi", "evsi", "evsi_direct", "perfect_info_value"};
  return keys.count(key) > 0;
}

bool is_number_list(const ordered_json& j) {
  return j.is_array() && !j.empty() &&
         std::all_of(j.begin(), j.end(), [](const ordered_json& e) { return e.is_number() || e.is_null(); });
}

std::string scalar_text(const ordered_json& j) {
  if (j.is_null()) return "unbounded";
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return fmt::format("{:.10g}", j.get<double>());
  return j.dump();
}

std::string fuzzy_text(const ordered_json& j) {
  std::string out;
  for (const auto& e : j) out += fmt::format("{}({}, {})", out.empty() ? "" : " ", scalar_text(e[0]), scalar_text(e[1]));
  return out;
}

std::string number_list_text(const ordered_json& j) {
  std::string out;
  for (const auto& e : j) out += (out.empty() ? "" : "  ") + (e.is_null() ? std::string("-") : scalar_text(e));
  return out;
}

void render(const ordered_json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_primitive()) {
        out += fmt::format("{}{}: {}\n", pad, key, scalar_text(value));
      } else if (value.empty()) {
        out += fmt::format("{}{}: none\n", pad, key);
      } else if (is_fuzzy_key(key)) {
        out += fmt::format("{}{}: {}\n", pad, key, fuzzy_text(value));
      } else if (is_number_list(value)) {
        out += fmt::format("{}{}: {}\n", pad, key, number_list_text(value));
      } else {
        out += fmt::format("{}{}:\n", pad, key);
        render(value, indent + 1, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_primitive()) {
        out += fmt::format("{}- {}\n", pad, scalar_text(e));
      } else if (is_number_list(e)) {
        out += fmt::format("{}{}\n", pad, number_list_text(e));
      } else {
        // Objects in a list print their first field on the dash line.
        std::string block;
        render(e, indent + 1, block);
        block.replace(0, pad.size() + 2, pad + "- ");
        out += block;
      }
    }
  } else {
    out += fmt::format("{}{}\n", pad, scalar_text(j));
  }
}

}  // namespace

double round10(double v) {
  if (!std::isfinite(v)) return v;
  const double r = std::stod(fmt::format("{:.10g}", v));
  return r == 0.0 ? 0.0 : r;
}

ordered_json fuzzy_report(const FuzzyNumber& f) {
  ordered_json out = ordered_json::array();
  for (const auto& b : f.breakpoints()) out.push_back({round10(b.x), round10(b.grade)});
  return out;
}

ordered_json regions_report(const RegionPartition& regions, const DecisionProblem& p, const Experiment& experiment) {
  ordered_json out;
  if (const auto* discrete = std::get_if<DiscretePartition>(&regions)) {
    out["kind"] = "discrete";
    ordered_json list = ordered_json::array();
    const auto& outcomes = experiment.as_discrete().outcomes;
    for (std::size_t x = 0; x < discrete->actions.size(); ++x) {
      list.push_back({{"outcome", outcomes[x]}, {"action", p.actions()[discrete->actions[x]]}});
    }
    out["outcomes"] = list;
    return out;
  }
  const auto& line = std::get<RealLinePartition>(regions);
  out["kind"] = "real_line";
  ordered_json cuts = ordered_json::array();
  for (double c : line.cuts) cuts.push_back(round10(c));
  out["cuts"] = cuts;
  ordered_json intervals = ordered_json::array();
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < line.actions.size(); ++i) {
    const double lo = i == 0 ? -inf : line.cuts[i - 1];
    const double hi = i == line.cuts.size() ? inf : line.cuts[i];
    intervals.push_back({{"lower", bound(lo)}, {"upper", bound(hi)}, {"action", p.actions()[line.actions[i]]}});
  }
  out["intervals"] = intervals;
  return out;
}

ordered_json analyze_report(const CommandEcho& echo, const ProblemFile& file, const RegionOptions& options) {
  const DecisionProblem& p = file.problem;
  ordered_json out = header(echo, &file);
  ordered_json states = ordered_json::array();
  for (std::size_t s = 0; s < p.state_count(); ++s) {
    states.push_back({{"name", p.states().name(s)}, {"prior", round10(p.prior()[s])}});
  }
  out["states"] = states;
  out["actions"] = p.actions();

  const auto utilities = prior_expected_utilities(p);
  out["prior_expected_utilities"] = labelled_values(p.actions(), utilities);
  out["pairwise_r"] = r_matrix_json(pairwise_r(utilities));
  const Selection best = best_index(utilities, options.tolerance);
  out["prior_best"] = selection_json(best, p.actions());

  ordered_json perfect = ordered_json::array();
  for (std::size_t s = 0; s < p.state_count(); ++s) {
    perfect.push_back({{"state", p.states().name(s)}, {"action", p.actions()[perfect_action(p, s).index]}});
  }
  out["perfect_actions"] = perfect;
  out["evpi"] = fuzzy_report(evpi(p, options.tolerance));

  ordered_json experiments = ordered_json::array();
  for (const auto& e : file.experiments) {
    ordered_json entry;
    entry["name"] = e.name;
    try {
      const ordered_json v = value_json(verify_theorem51(p, e.experiment, options), p, e.experiment);
      for (const auto& [key, value] : v.items()) entry[key] = value;
    } catch (const Error& err) {
      entry["error"] = err.what();
    }
    experiments.push_back(entry);
  }
  out["experiments"] = experiments;
  out["diagnostics"] = best.cycle_resolved ? ordered_json::array({diagnostic::kCycleResolved}) : ordered_json::array();
  return out;
}

ordered_json posterior_report(const CommandEcho& echo, const ProblemFile& file, const NamedExperiment& experiment,
                              const Observation& obs) {
  const DecisionProblem& p = file.problem;
  ordered_json out = header(echo, &file);
  out["experiment"] = experiment.name;
  if (const auto* value = std::get_if<RealValue>(&obs)) {
    out["observation"] = round10(value->x);
  } else {
    out["observation"] = experiment.experiment.as_discrete().outcomes.at(std::get<DiscreteOutcome>(obs).index);
  }
  const Distribution post = posterior(p.prior(), experiment.experiment, obs);
  ordered_json probs = ordered_json::array();
  for (std::size_t s = 0; s < p.state_count(); ++s) {
    probs.push_back({{"state", p.states().name(s)}, {"probability", round10(post[s])}});
  }
  out["posterior"] = probs;
  const auto utilities = posterior_expected_utilities(p, post);
  out["posterior_expected_utilities"] = labelled_values(p.actions(), utilities);
  out["pairwise_r"] = r_matrix_json(pairwise_r(utilities));
  const Selection best = best_index(utilities);
  out["posterior_best"] = selection_json(best, p.actions());
  out["diagnostics"] = best.cycle_resolved ? ordered_json::array({diagnostic::kCycleResolved}) : ordered_json::array();
  return out;
}

ordered_json evpi_report(const CommandEcho& echo, const ProblemFile& file) {
  const DecisionProblem& p = file.problem;
  ordered_json out = header(echo, &file);
  const auto utilities = prior_expected_utilities(p);
  out["prior_expected_utilities"] = labelled_values(p.actions(), utilities);
  const Selection best = best_index(utilities);
  out["prior_best"] = selection_json(best, p.actions());
  ordered_json perfect = ordered_json::array();
  for (std::size_t s = 0; s < p.state_count(); ++s) {
    perfect.push_back({{"state", p.states().name(s)}, {"action", p.actions()[perfect_action(p, s).index]}});
  }
  out["perfect_actions"] = perfect;
  out["perfect_info_value"] = fuzzy_report(perfect_info_value(p));
  out["evpi"] = fuzzy_report(evpi(p));
  out["diagnostics"] = best.cycle_resolved ? ordered_json::array({diagnostic::kCycleResolved}) : ordered_json::array();
  return out;
}

EvsiRun run_evsi(const DecisionProblem& p, const Experiment& experiment, const RegionOptions& regions,
                 const DirectOptions& direct) {
  EvsiRun run{verify_theorem51(p, experiment, regions), evsi_direct(p, experiment, direct, regions), 0.0};
  run.max_endpoint_gap = max_cut_gap(run.value.evsi, run.direct.value, std::max<std::size_t>(direct.levels, 2));
  return run;
}

ordered_json evsi_report(const CommandEcho& echo, const ProblemFile& file, const NamedExperiment& experiment,
                         const EvsiRun& run) {
  const DecisionProblem& p = file.problem;
  ordered_json out = header(echo, &file);
  out["experiment"] = experiment.name;
  out["prior_best"] = p.actions()[run.value.prior_best];
  out["evpi"] = fuzzy_report(run.value.evpi);
  const ordered_json v = value_json(run.value, p, experiment.experiment);
  for (const auto& [key, value] : v.items()) {
    if (key != "diagnostics") out[key] = value;
  }
  out["evsi_direct"] = fuzzy_report(run.direct.value);
  out["max_endpoint_gap"] = round10(run.max_endpoint_gap);
  ordered_json flags = run.value.diagnostics;
  for (const auto& f : run.direct.diagnostics) {
    if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
  }
  out["diagnostics"] = flags;
  return out;
}

ordered_json compare_report(const CommandEcho& echo, const ProblemFile& file, const ExperimentComparison& comparison) {
  ordered_json out = header(echo, &file);
  ordered_json list = ordered_json::array();
  for (std::size_t e = 0; e < file.experiments.size(); ++e) {
    ordered_json entry;
    entry["name"] = file.experiments[e].name;
    if (comparison.evsi[e]) {
      entry["evsi"] = fuzzy_report(*comparison.evsi[e]);
    } else {
      entry["error"] = comparison.errors[e];
    }
    list.push_back(entry);
  }
  out["experiments"] = list;
  ordered_json ranking = ordered_json::array();
  for (std::size_t e : comparison.ranking) ranking.push_back(file.experiments[e].name);
  out["ranking"] = ranking;
  ordered_json matrix = ordered_json::array();
  for (const auto& row : comparison.r_matrix) {
    ordered_json line = ordered_json::array();
    for (const auto& r : row) line.push_back(r ? ordered_json(round10(*r)) : ordered_json(nullptr));
    matrix.push_back(line);
  }
  out["pairwise_r"] = matrix;
  return out;
}

ordered_json check_report(const CommandEcho& echo, const std::vector<CheckOutcome>& outcomes) {
  ordered_json out = header(echo, nullptr);
  std::size_t passed = 0;
  double worst_upper = 0.0;
  double worst_lower = 0.0;
  ordered_json failures = ordered_json::array();
  for (const auto& o : outcomes) {
    if (o.passed) {
      ++passed;
    } else {
      ordered_json f{{"seed", o.seed}};
      if (o.error.empty()) {
        f["r_evpi_vs_evsi"] = round10(o.r_evpi_vs_evsi);
        f["r_evsi_vs_zero"] = round10(o.r_evsi_vs_zero);
      } else {
        f["error"] = o.error;
      }
      failures.push_back(f);
    }
    if (o.error.empty()) {
      worst_upper = std::max(worst_upper, o.r_evpi_vs_evsi);
      worst_lower = std::max(worst_lower, o.r_evsi_vs_zero);
    }
  }
  out["trials"] = outcomes.size();
  out["passed"] = passed;
  out["failed"] = outcomes.size() - passed;
  out["max_r_evpi_vs_evsi"] = round10(worst_upper);
  out["max_r_evsi_vs_zero"] = round10(worst_lower);
  out["failing_seeds"] = failures;
  return out;
}

std::string render_text(const ordered_json& report) {
  std::string out;
  render(report, 0, out);
  return out;
}

std::string render_json(const ordered_json& report) { return report.dump(2) + "\n"; }

}  // namespace fvoi
