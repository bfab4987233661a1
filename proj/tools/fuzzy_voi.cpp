// fuzzy-voi: Bayesian decision analysis with fuzzy utilities.
//
// Exit codes: 0 success, 1 usage, 2 parse error, 3 invariant violation,
// 4 numeric failure, 5 the EVPI >= EVSI >= 0 check failed.

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "fvoi/decision.hpp"
#include "fvoi/errors.hpp"
#include "fvoi/problem_io.hpp"
#include "fvoi/random_problem.hpp"
#include "fvoi/report.hpp"

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitTheorem = 5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string path;
  std::string experiment;
  std::optional<double> x;
  std::string outcome;
  bool json = false;
  std::string out;
  std::size_t trials = 500;
  std::uint64_t seed = 42;
  std::optional<double> override_threshold;
  std::size_t grid = 512;
  std::size_t levels = 33;
};

void emit(const ordered_json& report, const Args& args) {
  std::cout << (args.json ? fvoi::render_json(report) : fvoi::render_text(report));
}

bool given(const CLI::App& sub, const std::string& name) {
  const CLI::Option* opt = sub.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

fvoi::CommandEcho echo_for(const std::string& command, const Args& args, const CLI::App& sub) {
  fvoi::CommandEcho echo{command, args.path.empty() ? "" : fs::path(args.path).filename().string()};
  if (given(sub, "--experiment")) echo.options["experiment"] = args.experiment;
  if (given(sub, "--x")) echo.options["x"] = fvoi::round10(*args.x);
  if (given(sub, "--outcome")) echo.options["outcome"] = args.outcome;
  if (given(sub, "--override-threshold")) echo.options["override_threshold"] = fvoi::round10(*args.override_threshold);
  if (given(sub, "--grid")) echo.options["grid"] = args.grid;
  if (given(sub, "--levels")) echo.options["levels"] = args.levels;
  if (given(sub, "--trials")) echo.options["trials"] = args.trials;
  if (given(sub, "--seed")) echo.options["seed"] = args.seed;
  return echo;
}

const fvoi::NamedExperiment& pick_experiment(const fvoi::ProblemFile& file, const Args& args) {
  if (!args.experiment.empty()) return file.experiment(args.experiment);
  if (file.experiments.size() == 1) return file.experiments.front();
  throw UsageError(fmt::format("--experiment is required: the file lists {} experiments", file.experiments.size()));
}

fvoi::RegionOptions region_options(const Args& args) {
  fvoi::RegionOptions o;
  o.grid = args.grid;
  o.override_threshold = args.override_threshold;
  return o;
}

std::string file_token(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return s;
}

// Breakpoints plus 64 uniform fill points over the support.
void write_series(const fs::path& path, const std::string& series, const fvoi::FuzzyNumber& f) {
  std::set<double> ws;
  for (const auto& b : f.breakpoints()) ws.insert(b.x);
  const fvoi::Interval support = f.support();
  if (support.width() > 0.0) {
    for (int k = 0; k < 64; ++k) ws.insert(support.lo + support.width() * (k + 0.5) / 64.0);
  }
  std::ofstream out(path);
  if (!out) throw fvoi::InvariantError(fmt::format("cannot write {}", path.string()));
  out << "series,w,mu\n";
  for (double w : ws) out << fmt::format("{},{:.10g},{:.10g}\n", series, w, f.membership(w));
}

int run_plot(const fvoi::ProblemFile& file, const Args& args, const fvoi::CommandEcho& echo) {
  const fvoi::DecisionProblem& p = file.problem;
  const fs::path dir(args.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw fvoi::InvariantError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));

  std::vector<std::pair<std::string, fvoi::FuzzyNumber>> series;
  const auto utilities = fvoi::prior_expected_utilities(p);
  for (std::size_t a = 0; a < p.action_count(); ++a) {
    series.emplace_back("prior_eu_" + file_token(p.actions()[a]), utilities[a]);
  }
  series.emplace_back("evpi", fvoi::evpi(p));
  for (const auto& e : file.experiments) {
    series.emplace_back("evsi_" + file_token(e.name), fvoi::evsi(p, e.experiment, region_options(args)).value);
  }
  ordered_json report;
  report["tool"] = {{"name", fvoi::kToolName}, {"version", fvoi::kToolVersion}};
  report["command"] = {{"name", echo.command}, {"file", echo.file}, {"options", echo.options}};
  ordered_json files = ordered_json::array();
  for (const auto& [name, value] : series) {
    write_series(dir / (name + ".csv"), name, value);
    files.push_back(name + ".csv");
  }
  report["files"] = files;
  emit(report, args);
  return 0;
}

int run_check(const Args& args, const fvoi::CommandEcho& echo) {
  std::vector<fvoi::CheckOutcome> outcomes;
  bool all = true;
  for (std::size_t k = 0; k < args.trials; ++k) {
    fvoi::CheckOutcome o;
    o.seed = args.seed + k;
    try {
      const fvoi::RandomCase c = fvoi::random_case(o.seed);
      const fvoi::ValueReport v = fvoi::verify_theorem51(c.problem, c.experiment);
      o.passed = v.theorem_holds;
      o.r_evpi_vs_evsi = v.r_evpi_vs_evsi;
      o.r_evsi_vs_zero = v.r_evsi_vs_zero;
    } catch (const fvoi::Error& e) {
      o.error = e.what();
    }
    all = all && o.passed;
    outcomes.push_back(std::move(o));
  }
  emit(fvoi::check_report(echo, outcomes), args);
  return all ? 0 : kExitTheorem;
}

int dispatch(const std::string& command, const Args& args, const CLI::App& sub) {
  const fvoi::CommandEcho echo = echo_for(command, args, sub);
  if (command == "check") return run_check(args, echo);

  const fvoi::ProblemFile file = fvoi::load_problem(args.path);
  if (command == "analyze") {
    emit(fvoi::analyze_report(echo, file, region_options(args)), args);
    return 0;
  }
  if (command == "evpi") {
    emit(fvoi::evpi_report(echo, file), args);
    return 0;
  }
  if (command == "posterior") {
    const auto& e = pick_experiment(file, args);
    fvoi::Observation obs;
    if (args.x && !args.outcome.empty()) throw UsageError("give either --x or --outcome, not both");
    if (args.x) {
      obs = fvoi::RealValue{*args.x};
    } else if (!args.outcome.empty()) {
      if (e.experiment.is_gaussian()) throw UsageError("a gaussian experiment takes --x");
      const auto& names = e.experiment.as_discrete().outcomes;
      const auto it = std::find(names.begin(), names.end(), args.outcome);
      if (it == names.end()) throw fvoi::InvariantError(fmt::format("unknown outcome '{}'", args.outcome));
      obs = fvoi::DiscreteOutcome{static_cast<std::size_t>(it - names.begin())};
    } else {
      throw UsageError("posterior needs --x or --outcome");
    }
    emit(fvoi::posterior_report(echo, file, e, obs), args);
    return 0;
  }
  if (command == "evsi") {
    const auto& e = pick_experiment(file, args);
    fvoi::DirectOptions direct;
    direct.levels = args.levels;
    const fvoi::EvsiRun run = fvoi::run_evsi(file.problem, e.experiment, region_options(args), direct);
    emit(fvoi::evsi_report(echo, file, e, run), args);
    return run.value.theorem_holds ? 0 : kExitTheorem;
  }
  if (command == "compare") {
    const auto cmp = fvoi::compare_experiments(
        file.problem, [&] {
          std::vector<fvoi::Experiment> list;
          for (const auto& e : file.experiments) list.push_back(e.experiment);
          return list;
        }(),
        region_options(args));
    emit(fvoi::compare_report(echo, file, cmp), args);
    return 0;
  }
  if (command == "plot") return run_plot(file, args, echo);
  throw UsageError(fmt::format("unknown command '{}'", command));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian decision analysis with fuzzy utilities"};
  app.set_version_flag("--version", std::string(fvoi::kToolVersion));
  app.require_subcommand(1);
  Args args;

  auto with_file = [&](CLI::App* sub) { sub->add_option("path", args.path, "problem file (JSON)")->required(); };
  auto with_json = [&](CLI::App* sub) { sub->add_flag("--json", args.json, "machine-readable report"); };
  auto with_regions = [&](CLI::App* sub) {
    sub->add_option("--grid", args.grid, "scan points for gaussian decision regions")->check(CLI::Range(2, 1 << 20));
  };

  auto* analyze = app.add_subcommand("analyze", "prior analysis, EVPI and EVSI for every experiment");
  with_file(analyze);
  with_json(analyze);
  with_regions(analyze);

  auto* post = app.add_subcommand("posterior", "posterior expected utilities after one observation");
  with_file(post);
  with_json(post);
  post->add_option("--experiment", args.experiment, "experiment name");
  post->add_option("--x", args.x, "observed value (gaussian experiment)");
  post->add_option("--outcome", args.outcome, "observed outcome (discrete experiment)");

  auto* evpi = app.add_subcommand("evpi", "expected value of perfect information");
  with_file(evpi);
  with_json(evpi);

  auto* evsi = app.add_subcommand("evsi", "expected value of sample information, exit 5 if the ordering check fails");
  with_file(evsi);
  with_json(evsi);
  with_regions(evsi);
  evsi->add_option("--experiment", args.experiment, "experiment name");
  evsi->add_option("--override-threshold", args.override_threshold, "replace the single computed boundary");
  evsi->add_option("--levels", args.levels, "grade levels for the direct cross-check")->check(CLI::Range(2, 100000));

  auto* compare = app.add_subcommand("compare", "rank experiments by EVSI");
  with_file(compare);
  with_json(compare);
  with_regions(compare);

  auto* plot = app.add_subcommand("plot", "write membership functions as CSV");
  with_file(plot);
  with_json(plot);
  with_regions(plot);
  plot->add_option("--out", args.out, "output directory")->required();

  auto* check = app.add_subcommand("check", "randomized EVPI >= EVSI >= 0 suite");
  with_json(check);
  check->add_option("--trials", args.trials, "number of random problems");
  check->add_option("--seed", args.seed, "seed of the first trial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    return dispatch(sub->get_name(), args, *sub);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fvoi::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const fvoi::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const fvoi::Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvariant;
  }
}
