#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "strl/env/grid_world.hpp"
#include "strl/env/tau_state.hpp"
#include "strl/error.hpp"
#include "strl/oracle/naive_monitor.hpp"
#include "strl/stl/task.hpp"

namespace strl::oracle {

inline constexpr double kDefaultLeafGuard = 1e7;

/// Robust-enough verdict computed with the reference monitor: satisfied, and
/// the verdict survives every delay up to delta.
inline bool naive_robust_ok(const stl::TaskSpec& task, const stl::Signal& s) {
  const stl::Formula phi = task.formula();
  return naive_robustness(phi, s, 0) > 0.0 && naive_consistent_delay(phi, s, task.d_max()) >= task.delta;
}

/// Upper bound on the number of outcome-tree leaves for a T-step rollout.
inline double outcome_leaf_bound(const env::GridWorld& grid, const stl::TaskSpec& task) {
  std::size_t branching = 1;
  for (std::size_t i = 0; i < grid.num_cells(); ++i) {
    for (auto a : env::kActions) branching = std::max(branching, grid.transition(grid.cell(i), a).size());
  }
  return std::pow(static_cast<double>(branching), task.T);
}

/// Probability that a rollout of `policy` is robust enough, by summing the
/// probabilities of every outcome path. `task` must be resolved.
inline double exact_robust_probability(const env::GridWorld& grid, const stl::TaskSpec& task,
                                       const std::function<env::Action(const env::TauState&)>& policy,
                                       double guard = kDefaultLeafGuard) {
  const double leaves = outcome_leaf_bound(grid, task);
  if (leaves > guard) {
    throw GuardExceeded("outcome tree has up to " + std::to_string(leaves) + " leaves (guard " +
                        std::to_string(guard) + ")");
  }
  std::vector<env::Cell> path{grid.start()};
  double total = 0.0;
  std::function<void(const env::TauState&, double)> expand = [&](const env::TauState& w, double p) {
    if (static_cast<int>(path.size()) == task.T + 1) {
      if (naive_robust_ok(task, env::cells_to_signal(path, grid))) total += p;
      return;
    }
    for (const auto& [next, q] : grid.transition(path.back(), policy(w))) {
      path.push_back(next);
      expand(env::tau_shift(w, next), p * q);
      path.pop_back();
    }
  };
  expand(env::tau_init(grid.start(), task.tau), 1.0);
  return total;
}

}  // namespace strl::oracle
