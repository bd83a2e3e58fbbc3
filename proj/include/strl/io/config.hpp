#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "strl/env/grid_world.hpp"
#include "strl/error.hpp"
#include "strl/learn/hyperparams.hpp"
#include "strl/learn/reward.hpp"
#include "strl/stl/formula.hpp"
#include "strl/stl/parser.hpp"
#include "strl/stl/task.hpp"

namespace strl::io {

using nlohmann::json;

struct WorkspaceConfig {
  int n = 1;
  stl::RegionTable regions;
  double p_slip = 0.05;
  env::Cell start;
};

struct TaskConfig {
  std::string formula;
  int delta = 0;
  learn::Variant variant = learn::Variant::prob;
};

struct RunConfig {
  WorkspaceConfig workspace;
  TaskConfig task;
  learn::Hyperparams train;
  std::uint64_t seed = 0;
};

namespace detail {

inline void check_keys(const json& obj, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + std::string(key) + "' in " + where);
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where + ": " + e.what());
  }
}

template <typename T>
T get_or(const json& obj, const char* key, const std::string& where, T fallback) {
  return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

inline learn::Schedule schedule(const json& obj, const std::string& where, const char* initial_key,
                                learn::Schedule fallback) {
  check_keys(obj, where, {initial_key, "decay", "floor"});
  return {get_or(obj, initial_key, where, fallback.initial), get_or(obj, "decay", where, fallback.decay),
          get_or(obj, "floor", where, fallback.floor)};
}

}  // namespace detail

/// Fail-closed parse: unknown keys are errors. An optional top-level "run"
/// object (written by `train` into run.json) is accepted and ignored.
inline RunConfig parse_config(const json& j) {
  using detail::check_keys;
  using detail::get;
  using detail::get_or;
  check_keys(j, "config", {"workspace", "task", "train", "seed", "run"});
  RunConfig cfg;

  const json& ws = j.contains("workspace") ? j.at("workspace") : throw ConfigError("missing key 'workspace'");
  check_keys(ws, "workspace", {"n", "regions", "p_slip", "start"});
  cfg.workspace.n = get<int>(ws, "n", "workspace");
  cfg.workspace.p_slip = get_or<double>(ws, "p_slip", "workspace", 0.05);
  auto start = get<std::vector<int>>(ws, "start", "workspace");
  if (start.size() != 2) throw ConfigError("workspace.start must be [x, y]");
  cfg.workspace.start = {start[0], start[1]};
  if (ws.contains("regions")) {
    const json& regions = ws.at("regions");
    if (!regions.is_object()) throw ConfigError("workspace.regions must be an object");
    for (const auto& [name, box] : regions.items()) {
      const std::string where = "region '" + name + "'";
      check_keys(box, where, {"lo_x", "hi_x", "lo_y", "hi_y"});
      cfg.workspace.regions[name] =
          stl::Box{{get<double>(box, "lo_x", where), get<double>(box, "lo_y", where)},
                   {get<double>(box, "hi_x", where), get<double>(box, "hi_y", where)}};
    }
  }

  const json& task = j.contains("task") ? j.at("task") : throw ConfigError("missing key 'task'");
  check_keys(task, "task", {"formula", "delta", "variant"});
  cfg.task.formula = get<std::string>(task, "formula", "task");
  cfg.task.delta = get<int>(task, "delta", "task");
  cfg.task.variant = learn::variant_from_name(get_or<std::string>(task, "variant", "task", "prob"));

  if (j.contains("train")) {
    const json& tr = j.at("train");
    check_keys(tr, "train", {"beta", "gamma", "episodes", "alpha", "epsilon", "exp_clamp", "rho_scale"});
    auto& h = cfg.train;
    h.beta = get_or(tr, "beta", "train", h.beta);
    h.gamma = get_or(tr, "gamma", "train", h.gamma);
    h.episodes = get_or<std::size_t>(tr, "episodes", "train", h.episodes);
    if (tr.contains("alpha")) h.alpha = detail::schedule(tr.at("alpha"), "train.alpha", "a0", h.alpha);
    if (tr.contains("epsilon")) h.epsilon = detail::schedule(tr.at("epsilon"), "train.epsilon", "e0", h.epsilon);
    h.exp_clamp = get_or(tr, "exp_clamp", "train", h.exp_clamp);
    h.rho_scale = get_or(tr, "rho_scale", "train", h.rho_scale);
  }
  cfg.train.validate();
  cfg.seed = get_or<std::uint64_t>(j, "seed", "config", 0);
  if (cfg.task.delta < 0) throw ConfigError("task.delta must be nonnegative");
  return cfg;
}

inline json to_json(const RunConfig& cfg) {
  json regions = json::object();
  for (const auto& [name, box] : cfg.workspace.regions) {
    regions[name] = {{"lo_x", box.lo[0]}, {"hi_x", box.hi[0]}, {"lo_y", box.lo[1]}, {"hi_y", box.hi[1]}};
  }
  const auto& h = cfg.train;
  return json{
      {"workspace",
       {{"n", cfg.workspace.n},
        {"regions", regions},
        {"p_slip", cfg.workspace.p_slip},
        {"start", {cfg.workspace.start.x, cfg.workspace.start.y}}}},
      {"task",
       {{"formula", cfg.task.formula},
        {"delta", cfg.task.delta},
        {"variant", std::string(learn::variant_name(cfg.task.variant))}}},
      {"train",
       {{"beta", h.beta},
        {"gamma", h.gamma},
        {"episodes", h.episodes},
        {"alpha", {{"a0", h.alpha.initial}, {"decay", h.alpha.decay}, {"floor", h.alpha.floor}}},
        {"epsilon", {{"e0", h.epsilon.initial}, {"decay", h.epsilon.decay}, {"floor", h.epsilon.floor}}},
        {"exp_clamp", h.exp_clamp},
        {"rho_scale", h.rho_scale}}},
      {"seed", cfg.seed},
  };
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RunConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

/// Everything a run needs, with region predicates resolved.
struct Problem {
  env::GridWorld grid;
  stl::Formula formula;  // as written, unresolved
  stl::TaskSpec task;    // resolved
  learn::RewardSpec reward;
  learn::Hyperparams hyper;
};

inline Problem make_problem(const RunConfig& cfg) {
  env::GridWorld grid(cfg.workspace.n, cfg.workspace.regions, cfg.workspace.p_slip, cfg.workspace.start);
  stl::Formula phi = stl::parse_formula(cfg.task.formula);
  stl::TaskSpec task = stl::TaskSpec::from_formula(stl::resolve(phi, grid.regions()), cfg.task.delta);
  auto reward = learn::RewardSpec::for_task(task, cfg.task.variant, cfg.train.beta, cfg.train.rho_scale);
  return Problem{std::move(grid), std::move(phi), std::move(task), std::move(reward), cfg.train};
}

}  // namespace strl::io
