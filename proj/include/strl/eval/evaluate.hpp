#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "strl/env/grid_world.hpp"
#include "strl/env/tau_state.hpp"
#include "strl/error.hpp"
#include "strl/learn/reward.hpp"
#include "strl/stl/monitor.hpp"
#include "strl/stl/task.hpp"
#include "strl/util/rng.hpp"

namespace strl::eval {

template <typename P>
concept WindowPolicy = requires(const P& p, const env::TauState& w) {
  { p(w) } -> std::convertible_to<env::Action>;
};

/// Visited cells s_0 ... s_T under a deterministic window policy.
template <WindowPolicy Policy>
std::vector<env::Cell> rollout_cells(const env::GridWorld& grid, const Policy& policy,
                                     const stl::TaskSpec& task, Rng& rng) {
  std::vector<env::Cell> cells{grid.start()};
  cells.reserve(static_cast<std::size_t>(task.T) + 1);
  env::TauState w = env::tau_init(grid.start(), task.tau);
  for (int t = 0; t < task.T; ++t) {
    const env::Cell next = grid.step(cells.back(), policy(w), rng);
    w = env::tau_shift(w, next);
    cells.push_back(next);
  }
  return cells;
}

template <WindowPolicy Policy>
stl::Signal rollout(const env::GridWorld& grid, const Policy& policy, const stl::TaskSpec& task,
                    Rng& rng) {
  return env::cells_to_signal(rollout_cells(grid, policy, task, rng), grid);
}

struct TrajectoryRecord {
  stl::Signal signal;
  bool sat = false;
  int theta = 0;
  bool robust_ok = false;
  double rho = 0.0;
  double rho_delta = 0.0;
  double episodic_reward = 0.0;
  /// The window route: max (F) or min (G) over t of rb(phi, window_t, delta).
  bool window_robust = false;
};

struct EvalReport {
  std::size_t n_traj = 0;
  double sat_rate = 0.0;
  double robust_rate = 0.0;
  double mean_rho = 0.0;
  double mean_theta = 0.0;
  std::size_t q_entries = 0;
};

/// max (F) or min (G) over t in [0, T] of rb on the padded window ending at t.
inline bool window_route_robust(const stl::TaskSpec& task, const stl::Signal& s) {
  const bool any = task.outer == stl::Outer::eventually;
  for (int t = 0; t <= task.T; ++t) {
    const bool ok = stl::rb(task.inner, stl::window_at(task, s, t), task.delta) == 1;
    if (any && ok) return true;
    if (!any && !ok) return false;
  }
  return !any;
}

/// Sum over t in [0, T] of the step reward on window_t.
inline double episodic_reward(const stl::TaskSpec& task, const stl::Signal& s,
                              learn::StepReward& reward) {
  double total = 0.0;
  for (int t = 0; t <= task.T; ++t) total += reward.shaped(reward.quality(stl::window_at(task, s, t)));
  return total;
}

/// All trajectory metrics. `task` must carry resolved region predicates.
inline TrajectoryRecord score_trajectory(const stl::TaskSpec& task, const stl::Signal& s,
                                         learn::StepReward* reward = nullptr) {
  const stl::Formula phi = task.formula();
  TrajectoryRecord rec;
  rec.rho = stl::spatial_robustness(phi, s, 0);
  rec.sat = rec.rho > 0.0;
  rec.theta = stl::temporal_robustness(phi, s, 0, task.d_max());
  rec.robust_ok = stl::temporally_robust(phi, s, 0, task.delta, task.d_max());
  rec.rho_delta = stl::trajectory_worst_robustness(task, s);
  rec.window_robust = window_route_robust(task, s);
  if (reward) rec.episodic_reward = episodic_reward(task, s, *reward);
  rec.signal = s;
  return rec;
}

struct Evaluation {
  EvalReport report;
  std::vector<TrajectoryRecord> records;
};

/// n greedy rollouts, each on its own stream derived from `seed`.
template <WindowPolicy Policy>
Evaluation evaluate(const env::GridWorld& grid, const Policy& policy, const stl::TaskSpec& task,
                    std::size_t n, std::uint64_t seed, learn::StepReward* reward = nullptr,
                    bool keep_records = false) {
  if (n == 0) throw EvaluationError("evaluation needs at least one rollout");
  Evaluation out;
  std::size_t sat = 0, robust = 0;
  double rho_sum = 0.0, theta_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    TrajectoryRecord rec = score_trajectory(task, rollout(grid, policy, task, rng), reward);
    sat += rec.sat;
    robust += rec.robust_ok;
    rho_sum += rec.rho;
    theta_sum += rec.theta;
    if (keep_records) out.records.push_back(std::move(rec));
  }
  const auto count = static_cast<double>(n);
  out.report.n_traj = n;
  out.report.sat_rate = static_cast<double>(sat) / count;
  out.report.robust_rate = static_cast<double>(robust) / count;
  out.report.mean_rho = rho_sum / count;
  out.report.mean_theta = theta_sum / count;
  return out;
}

}  // namespace strl::eval

namespace strl::eval {

/// Discounted reward of one simulated training-length episode (T + 1 steps,
/// reward on each entered window), as optimized by Q-learning.
template <WindowPolicy Policy>
double discounted_return(const env::GridWorld& grid, const Policy& policy, const stl::TaskSpec& task,
                         learn::StepReward& reward, double gamma, Rng& rng) {
  env::TauState w = env::tau_init(grid.start(), task.tau);
  env::Cell cell = grid.start();
  double total = 0.0, discount = 1.0;
  for (int t = 0; t <= task.T; ++t) {
    cell = grid.step(cell, policy(w), rng);
    w = env::tau_shift(w, cell);
    total += discount * reward(w);
    discount *= gamma;
  }
  return total;
}

}  // namespace strl::eval
