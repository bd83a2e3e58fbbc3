// Command-line front end: train, eval, monitor, oracle-check.
//
// Exit codes: 0 success, 1 tolerance failure, 2 input error, 3 runtime failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "strl/eval/evaluate.hpp"
#include "strl/eval/learning_curve.hpp"
#include "strl/io/config.hpp"
#include "strl/io/qtable_io.hpp"
#include "strl/io/report_json.hpp"
#include "strl/io/signal_csv.hpp"
#include "strl/learn/q_learning.hpp"
#include "strl/oracle/check.hpp"
#include "strl/stl/monitor.hpp"
#include "strl/stl/parser.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kToleranceFailure = 1;
constexpr int kInputError = 2;
constexpr int kRuntimeFailure = 3;

// Stream id separating evaluation rollouts from the training stream.
constexpr std::uint64_t kEvalStream = 0xe7a1;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

strl::io::RunConfig load(const std::string& path, std::optional<std::uint64_t> seed) {
  auto cfg = strl::io::load_config(path);
  if (seed) cfg.seed = *seed;
  return cfg;
}

std::string canonical_formula(const strl::io::Problem& p) { return strl::stl::to_string(p.formula); }

int cmd_train(const std::string& config, const std::string& out_dir, std::optional<std::uint64_t> seed) {
  auto cfg = load(config, seed);
  auto problem = strl::io::make_problem(cfg);
  auto result = strl::learn::train(problem.grid, problem.task, problem.reward, problem.hyper, cfg.seed);

  fs::create_directories(out_dir);
  std::ostringstream q;
  strl::io::write_qtable(q, result.q, problem.task.tau, canonical_formula(problem), problem.grid);
  write_text(fs::path(out_dir) / "qtable.txt", q.str());
  write_text(fs::path(out_dir) / "curve.csv", strl::eval::learning_curve_csv(result.curve));

  json run = strl::io::to_json(cfg);
  run["run"] = {{"tau", problem.task.tau},
                {"formula_horizon", strl::stl::horizon_length(problem.task.formula())},
                {"inner_horizon", strl::stl::horizon_length(problem.task.inner)},
                {"T", problem.task.T},
                {"clamp_count", result.clamp_count},
                {"q_entries", result.q.entry_count()}};
  write_text(fs::path(out_dir) / "run.json", run.dump(2) + "\n");
  std::cerr << "trained " << cfg.task.formula << " for " << problem.hyper.episodes << " episodes, "
            << result.q.entry_count() << " Q entries\n";
  return kOk;
}

int cmd_eval(const std::string& qtable, const std::string& config, std::size_t n, const std::string& out,
             const std::string& traces, std::optional<std::uint64_t> seed) {
  auto cfg = load(config, seed);
  auto problem = strl::io::make_problem(cfg);
  std::ifstream in(qtable);
  if (!in) throw InputError("cannot open '" + qtable + "'");
  strl::io::QTableHeader header;
  auto q = strl::io::read_qtable(in, problem.grid, &header);
  if (header.tau != problem.task.tau) {
    throw InputError("Q-table tau " + std::to_string(header.tau) + " does not match config tau " +
                     std::to_string(problem.task.tau));
  }
  if (header.formula != canonical_formula(problem)) {
    throw InputError("Q-table formula '" + header.formula + "' does not match config formula '" +
                     canonical_formula(problem) + "'");
  }
  if (n == 0) throw InputError("--n must be at least 1");

  auto policy = strl::learn::greedy_policy(q);
  strl::learn::StepReward reward(problem.reward, problem.grid, problem.hyper.exp_clamp);
  auto result = strl::eval::evaluate(problem.grid, policy, problem.task, n,
                                     strl::derive_seed(cfg.seed, kEvalStream), &reward, !traces.empty());
  result.report.q_entries = q.entry_count();
  const std::string report = strl::io::to_json(result.report).dump(2) + "\n";
  if (!out.empty()) write_text(out, report);
  std::cout << report;
  if (!traces.empty()) {
    std::ostringstream lines;
    for (const auto& rec : result.records) lines << strl::io::to_json(rec).dump() << "\n";
    write_text(traces, lines.str());
  }
  return kOk;
}

strl::stl::RegionTable parse_region_flags(const std::vector<std::string>& flags) {
  strl::stl::RegionTable table;
  for (const auto& flag : flags) {
    auto eq = flag.find('=');
    if (eq == std::string::npos) throw InputError("--region expects Name=lo_x,hi_x,lo_y,hi_y");
    std::vector<double> v;
    std::stringstream ss(flag.substr(eq + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        v.push_back(std::stod(tok));
      } catch (const std::logic_error&) {
        throw InputError("bad number '" + tok + "' in --region");
      }
    }
    if (v.size() != 4) throw InputError("--region expects Name=lo_x,hi_x,lo_y,hi_y");
    table[flag.substr(0, eq)] = strl::stl::Box{{v[0], v[2]}, {v[1], v[3]}};
  }
  return table;
}

int cmd_monitor(const std::string& formula, const std::string& signal_path, int delta,
                const std::string& config, const std::vector<std::string>& region_flags) {
  if (delta < 0) throw InputError("--delta must be nonnegative");
  strl::stl::RegionTable regions;
  if (!config.empty()) regions = strl::io::load_config(config).workspace.regions;
  for (auto& [name, box] : parse_region_flags(region_flags)) regions[name] = box;

  auto phi = strl::stl::resolve(strl::stl::parse_formula(formula), regions);
  strl::stl::Signal s;
  try {
    s = strl::io::parse_signal_csv(strl::io::read_file(signal_path));
  } catch (const strl::Error& e) {
    throw InputError(e.what());
  }
  const int d_max = strl::stl::horizon_length(phi) + 1;
  json out = {{"rho", strl::stl::spatial_robustness(phi, s, 0)},
              {"sat", strl::stl::boolean_sat(phi, s, 0)},
              {"theta", strl::stl::temporal_robustness(phi, s, 0, d_max)},
              {"robust_ok", strl::stl::temporally_robust(phi, s, 0, delta, d_max)},
              {"rho_delta", strl::stl::worst_shifted_robustness(phi, s, delta)}};
  std::cout << out.dump() << "\n";
  return kOk;
}

int cmd_oracle_check(const std::string& config, std::optional<std::uint64_t> seed) {
  auto cfg = load(config, seed);
  auto problem = strl::io::make_problem(cfg);
  strl::oracle::OracleCheck check;
  try {
    check = strl::oracle::run_oracle_check(problem, cfg.seed);
  } catch (const strl::GuardExceeded& e) {
    throw InputError(e.what());
  }
  json out = {{"deterministic", check.deterministic},
              {"tau_states", check.tau_states},
              {"q_entries", check.q_entries},
              {"optimal_value", check.optimal_value},
              {"learned_value", check.learned_value},
              {"value_gap", check.value_gap},
              {"optimal_robust_probability", check.optimal_robust_probability},
              {"exact_robust_probability", check.exact_robust_probability},
              {"mc_robust_probability", check.mc_robust_probability},
              {"probability_gap", check.probability_gap},
              {"optimality_gap", check.optimality_gap},
              {"pass", check.pass}};
  if (!check.deterministic) out["learned_value_mc"] = check.learned_value_mc;
  std::cout << out.dump(2) << "\n";
  return check.pass ? kOk : kToleranceFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporally-robust STL policy synthesis with tabular Q-learning"};
  app.require_subcommand(1);

  std::string config, out, qtable, formula, signal, traces;
  std::optional<std::uint64_t> seed;
  std::size_t n = 1000;
  int delta = 0;
  std::vector<std::string> regions;

  auto* train = app.add_subcommand("train", "Train a Q-table from a run config");
  train->add_option("--config", config, "Run config (JSON)")->required();
  train->add_option("--out", out, "Output directory")->required();
  train->add_option("--seed", seed, "Override the config seed");

  auto* evalc = app.add_subcommand("eval", "Evaluate the greedy policy of a Q-table");
  evalc->add_option("--qtable", qtable, "Q-table file")->required();
  evalc->add_option("--config", config, "Run config (JSON)")->required();
  evalc->add_option("--n", n, "Number of rollouts")->capture_default_str();
  evalc->add_option("--out", out, "Report path (JSON)");
  evalc->add_option("--traces", traces, "Per-trajectory records (JSON Lines)");
  evalc->add_option("--seed", seed, "Override the config seed");

  auto* monitor = app.add_subcommand("monitor", "Monitor a signal against a formula at t = 0");
  monitor->add_option("--formula", formula, "Formula text")->required();
  monitor->add_option("--signal", signal, "Signal CSV")->required();
  monitor->add_option("--delta", delta, "Delay budget")->capture_default_str();
  monitor->add_option("--config", config, "Run config providing the region table");
  monitor->add_option("--region", regions, "Region Name=lo_x,hi_x,lo_y,hi_y (repeatable)");

  auto* oracle = app.add_subcommand("oracle-check", "Compare a trained policy against exact solutions");
  oracle->add_option("--config", config, "Run config (JSON)")->required();
  oracle->add_option("--seed", seed, "Override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*train) return cmd_train(config, out, seed);
    if (*evalc) return cmd_eval(qtable, config, n, out, traces, seed);
    if (*monitor) return cmd_monitor(formula, signal, delta, config, regions);
    if (*oracle) return cmd_oracle_check(config, seed);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const strl::ParseError& e) {
    std::cerr << "error: formula: " << e.what() << "\n";
    return kInputError;
  } catch (const strl::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kInputError;
  } catch (const strl::FormulaError& e) {
    std::cerr << "error: formula: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kInputError;
}
