#include "fvoi/problem_io.hpp"

#include <fmt/format.h>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fvoi/errors.hpp"

namespace fvoi {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string at(const std::string& where, const std::string& child) { return where + "/" + child; }
std::string at(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError(fmt::format("{}: {}", where.empty() ? "/" : where, what));
}

// Runs `f`, prefixing any invariant or numeric error with the field location.
template <typename F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvariantError& e) {
    throw InvariantError(fmt::format("{}: {}", where.empty() ? "/" : where, e.what()));
  } catch (const NumericError& e) {
    throw NumericError(fmt::format("{}: {}", where.empty() ? "/" : where, e.what()));
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, fmt::format("missing field '{}'", key));
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  return j.get<double>();
}

std::string string(const json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where, "expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array");
  return j;
}

std::vector<double> numbers(const json& j, const std::string& where) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(number(j[i], at(where, i)));
  return out;
}

std::vector<Breakpoint> point_list(const json& j, const std::string& where) {
  std::vector<Breakpoint> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) {
    const std::string w = at(where, i);
    if (!j[i].is_array() || j[i].size() != 2) parse_fail(w, "expected an [x, mu] pair");
    out.push_back({number(j[i][0], at(w, 0)), number(j[i][1], at(w, 1))});
  }
  return out;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) parse_fail(at(where, item.key()), "unknown field");
  }
}

// One value per state, given as an object keyed by state name.
template <typename T, typename Read>
std::vector<T> per_state(const json& j, const StateSpace& states, const std::string& where, Read read) {
  if (!j.is_object()) parse_fail(where, "expected an object keyed by state name");
  std::vector<std::optional<T>> slots(states.size());
  for (const auto& item : j.items()) {
    const std::string w = at(where, item.key());
    const std::size_t s = located(w, [&] { return states.index_of(item.key()); });
    slots[s] = read(item.value(), w);
  }
  std::vector<T> out;
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!slots[s]) parse_fail(where, fmt::format("missing entry for state '{}'", states.name(s)));
    out.push_back(std::move(*slots[s]));
  }
  return out;
}

NamedExperiment parse_experiment(const json& j, const StateSpace& states, const std::string& where) {
  check_keys(j, {"name", "gaussian", "outcomes", "likelihood"}, where);
  std::string name = string(member(j, "name", where), at(where, "name"));
  if (j.contains("gaussian")) {
    if (j.contains("outcomes") || j.contains("likelihood")) {
      parse_fail(where, "an experiment is either gaussian or discrete, not both");
    }
    const std::string w = at(where, "gaussian");
    const json& g = j["gaussian"];
    check_keys(g, {"means", "stds"}, w);
    auto means = per_state<double>(member(g, "means", w), states, at(w, "means"), number);
    auto stds = per_state<double>(member(g, "stds", w), states, at(w, "stds"), number);
    return {std::move(name), located(w, [&] { return Experiment::gaussian(std::move(means), std::move(stds)); })};
  }
  std::vector<std::string> outcomes;
  const json& names = array(member(j, "outcomes", where), at(where, "outcomes"));
  for (std::size_t i = 0; i < names.size(); ++i) outcomes.push_back(string(names[i], at(at(where, "outcomes"), i)));
  auto rows = per_state<std::vector<double>>(member(j, "likelihood", where), states, at(where, "likelihood"),
                                             numbers);
  return {std::move(name),
          located(where, [&] { return Experiment::discrete(std::move(outcomes), std::move(rows)); })};
}

ordered_json experiment_to_json(const NamedExperiment& e, const StateSpace& states) {
  ordered_json out;
  out["name"] = e.name;
  if (e.experiment.is_gaussian()) {
    const auto& m = e.experiment.as_gaussian();
    ordered_json means = ordered_json::object();
    ordered_json stds = ordered_json::object();
    for (std::size_t s = 0; s < states.size(); ++s) {
      means[states.name(s)] = m.means[s];
      stds[states.name(s)] = m.stds[s];
    }
    out["gaussian"] = {{"means", means}, {"stds", stds}};
  } else {
    const auto& m = e.experiment.as_discrete();
    out["outcomes"] = m.outcomes;
    ordered_json rows = ordered_json::object();
    for (std::size_t s = 0; s < states.size(); ++s) rows[states.name(s)] = m.likelihood[s];
    out["likelihood"] = rows;
  }
  return out;
}

}  // namespace

const NamedExperiment& ProblemFile::experiment(const std::string& name) const {
  for (const auto& e : experiments) {
    if (e.name == name) return e;
  }
  throw InvariantError(fmt::format("unknown experiment '{}'", name));
}

FuzzyNumber parse_fuzzy_literal(const json& j, const std::string& where) {
  if (j.is_array()) return located(where, [&] { return FuzzyNumber::from_breakpoints(point_list(j, where)); });
  if (!j.is_object() || j.size() != 1) parse_fail(where, "expected a fuzzy number literal");
  const auto entry = j.begin();
  const std::string form = entry.key();
  const json& body = entry.value();
  const std::string w = at(where, form);
  if (form == "crisp") return located(where, [&] { return FuzzyNumber::crisp(number(body, w)); });
  if (form == "points") return located(where, [&] { return FuzzyNumber::from_breakpoints(point_list(body, w)); });
  if (form == "tri" || form == "trap") {
    const std::vector<double> v = numbers(body, w);
    const std::size_t want = form == "tri" ? 3 : 4;
    if (v.size() != want) parse_fail(w, fmt::format("expected {} numbers", want));
    return located(where, [&] {
      return want == 3 ? FuzzyNumber::triangular(v[0], v[1], v[2]) : FuzzyNumber::trapezoidal(v[0], v[1], v[2], v[3]);
    });
  }
  parse_fail(where, fmt::format("unknown fuzzy literal form '{}'", form));
}

ordered_json fuzzy_to_json(const FuzzyNumber& f) {
  ordered_json out = ordered_json::array();
  for (const auto& b : f.breakpoints()) out.push_back({b.x, b.grade});
  return out;
}

ProblemFile parse_problem(const json& j, const std::string& source) {
  try {
    if (!j.is_object()) parse_fail("", "expected a problem object");
    check_keys(j, {"name", "notes", "terms", "states", "actions", "utilities", "experiments"}, "");

    std::string name = j.contains("name") ? string(j["name"], "/name") : "";
    std::vector<std::string> notes;
    if (j.contains("notes")) {
      const json& n = array(j["notes"], "/notes");
      for (std::size_t i = 0; i < n.size(); ++i) notes.push_back(string(n[i], at("/notes", i)));
    }

    std::vector<NamedTerm> terms;
    std::map<std::string, std::size_t> term_index;
    if (j.contains("terms")) {
      if (!j["terms"].is_object()) parse_fail("/terms", "expected an object of named fuzzy numbers");
      for (const auto& item : j["terms"].items()) {
        term_index[item.key()] = terms.size();
        terms.push_back({item.key(), parse_fuzzy_literal(item.value(), at("/terms", item.key()))});
      }
    }

    const json& state_list = array(member(j, "states", ""), "/states");
    std::vector<std::string> state_names;
    std::vector<double> prior;
    for (std::size_t i = 0; i < state_list.size(); ++i) {
      const std::string w = at("/states", i);
      check_keys(state_list[i], {"name", "prior"}, w);
      state_names.push_back(string(member(state_list[i], "name", w), at(w, "name")));
      prior.push_back(number(member(state_list[i], "prior", w), at(w, "prior")));
    }
    StateSpace states = located("/states", [&] { return StateSpace(state_names); });
    Distribution dist = located("/states", [&] {
      try {
        return Distribution(prior);
      } catch (const InvariantError& e) {
        throw InvariantError(fmt::format("prior: {}", e.what()));
      }
    });

    const json& action_list = array(member(j, "actions", ""), "/actions");
    std::vector<std::string> actions;
    for (std::size_t i = 0; i < action_list.size(); ++i) actions.push_back(string(action_list[i], at("/actions", i)));

    const json& table = array(member(j, "utilities", ""), "/utilities");
    if (table.size() != states.size()) {
      throw InvariantError(fmt::format("/utilities: {} rows for {} states", table.size(), states.size()));
    }
    std::vector<std::vector<FuzzyNumber>> rows;
    std::vector<std::vector<std::optional<std::string>>> refs;
    for (std::size_t s = 0; s < table.size(); ++s) {
      const std::string w = at("/utilities", s);
      const json& row = array(table[s], w);
      if (row.size() != actions.size()) {
        throw InvariantError(fmt::format("{}: {} entries for {} actions", w, row.size(), actions.size()));
      }
      rows.emplace_back();
      refs.emplace_back();
      for (std::size_t a = 0; a < row.size(); ++a) {
        if (row[a].is_string()) {
          const std::string term = row[a].get<std::string>();
          const auto it = term_index.find(term);
          if (it == term_index.end()) parse_fail(at(w, a), fmt::format("unknown term '{}'", term));
          rows.back().push_back(terms[it->second].value);
          refs.back().emplace_back(term);
        } else {
          rows.back().push_back(parse_fuzzy_literal(row[a], at(w, a)));
          refs.back().emplace_back();
        }
      }
    }

    DecisionProblem problem = located("", [&] {
      return DecisionProblem(states, actions, dist, UtilityTable(std::move(rows)));
    });

    std::vector<NamedExperiment> experiments;
    std::set<std::string> seen;
    if (j.contains("experiments")) {
      const json& list = array(j["experiments"], "/experiments");
      for (std::size_t i = 0; i < list.size(); ++i) {
        experiments.push_back(parse_experiment(list[i], states, at("/experiments", i)));
        if (!seen.insert(experiments.back().name).second) {
          throw InvariantError(
              fmt::format("{}: duplicate experiment name '{}'", at("/experiments", i), experiments.back().name));
        }
      }
    }
    return ProblemFile{std::move(name), std::move(notes), std::move(terms), std::move(refs), std::move(problem),
                       std::move(experiments)};
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}:{}", source, e.what()));
  } catch (const InvariantError& e) {
    throw InvariantError(fmt::format("{}:{}", source, e.what()));
  }
}

ProblemFile parse_problem_text(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: malformed JSON: {}", source, e.what()));
  }
  return parse_problem(j, source);
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str(), path.filename().string());
}

ordered_json problem_to_json(const ProblemFile& file) {
  const DecisionProblem& p = file.problem;
  ordered_json out;
  if (!file.name.empty()) out["name"] = file.name;
  if (!file.notes.empty()) out["notes"] = file.notes;
  if (!file.terms.empty()) {
    ordered_json terms = ordered_json::object();
    for (const auto& t : file.terms) terms[t.name] = fuzzy_to_json(t.value);
    out["terms"] = terms;
  }
  ordered_json states = ordered_json::array();
  for (std::size_t s = 0; s < p.state_count(); ++s) {
    states.push_back({{"name", p.states().name(s)}, {"prior", p.prior()[s]}});
  }
  out["states"] = states;
  out["actions"] = p.actions();
  ordered_json table = ordered_json::array();
  for (std::size_t s = 0; s < p.state_count(); ++s) {
    ordered_json row = ordered_json::array();
    for (std::size_t a = 0; a < p.action_count(); ++a) {
      const bool named = s < file.utility_terms.size() && a < file.utility_terms[s].size() &&
                         file.utility_terms[s][a].has_value();
      row.push_back(named ? ordered_json(*file.utility_terms[s][a]) : fuzzy_to_json(p.utilities().at(s, a)));
    }
    table.push_back(row);
  }
  out["utilities"] = table;
  ordered_json experiments = ordered_json::array();
  for (const auto& e : file.experiments) experiments.push_back(experiment_to_json(e, p.states()));
  out["experiments"] = experiments;
  return out;
}

}  // namespace fvoi
