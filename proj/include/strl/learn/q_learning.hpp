#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "strl/env/grid_world.hpp"
#include "strl/env/tau_state.hpp"
#include "strl/error.hpp"
#include "strl/learn/hyperparams.hpp"
#include "strl/learn/qtable.hpp"
#include "strl/learn/reward.hpp"
#include "strl/stl/task.hpp"
#include "strl/util/rng.hpp"

namespace strl::learn {

struct CurvePoint {
  std::size_t episode = 0;
  double reward = 0.0;  // undiscounted sum of step rewards
  double alpha = 0.0;
  double epsilon = 0.0;
};

using LearningCurve = std::vector<CurvePoint>;

struct TrainResult {
  QTable q;
  LearningCurve curve;
  std::size_t clamp_count = 0;
};

/// Tabular Q-learning on the tau-MDP. Each episode starts from the padded
/// initial window and takes T + 1 steps; the last update is terminal.
inline TrainResult train(const env::GridWorld& grid, const stl::TaskSpec& task,
                         const RewardSpec& spec, const Hyperparams& h, std::uint64_t seed) {
  h.validate();
  if (spec.outer != task.outer || spec.delta != task.delta || !(spec.phi == task.inner)) {
    throw ConfigError("reward spec does not match the task");
  }
  TrainResult result;
  result.curve.reserve(h.episodes);
  StepReward reward(spec, grid, h.exp_clamp);
  Rng rng(seed);

  for (std::size_t i = 0; i < h.episodes; ++i) {
    const double alpha = h.alpha.at(i);
    const double epsilon = h.epsilon.at(i);
    env::TauState w = env::tau_init(grid.start(), task.tau);
    env::Cell cell = grid.start();
    double total = 0.0;
    for (int t = 0; t <= task.T; ++t) {
      const Action a = select_action(result.q, w, epsilon, rng);
      cell = grid.step(cell, a, rng);
      env::TauState next = env::tau_shift(w, cell);
      const double r = reward(next);
      q_update(result.q, w, a, r, next, alpha, h.gamma, t == task.T);
      total += r;
      w = std::move(next);
    }
    result.curve.push_back({i, total, alpha, epsilon});
  }
  result.clamp_count = reward.clamp_count();
  return result;
}

}  // namespace strl::learn
