#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "strl/env/explicit_mdp.hpp"
#include "strl/eval/evaluate.hpp"
#include "strl/io/config.hpp"
#include "strl/learn/q_learning.hpp"
#include "strl/oracle/exact_probability.hpp"
#include "strl/oracle/value_iteration.hpp"
#include "strl/util/rng.hpp"

namespace strl::oracle {

/// Relative tolerance between the learned and optimal objective on a
/// deterministic instance; values scale with exp(beta).
inline constexpr double kDeterministicTolerance = 1e-6;
/// Absolute tolerance on robust probabilities for stochastic instances.
inline constexpr double kStochasticTolerance = 0.02;
inline constexpr std::size_t kStochasticRollouts = 100'000;

struct OracleCheck {
  bool deterministic = false;
  std::size_t tau_states = 0;
  double optimal_value = 0.0;         // value iteration, from the initial window
  double learned_value = 0.0;         // exact value of the greedy learned policy
  double learned_value_mc = 0.0;      // Monte Carlo estimate (stochastic only)
  double value_gap = 0.0;             // relative; part of the verdict when deterministic
  double optimal_robust_probability = 0.0;  // exact, under the value-iteration policy
  double exact_robust_probability = 0.0;    // exact, under the learned policy
  double mc_robust_probability = 0.0;
  double probability_gap = 0.0;             // Monte Carlo vs exact, learned policy
  double optimality_gap = 0.0;              // learned vs value-iteration policy
  std::size_t q_entries = 0;
  bool pass = false;
};

inline double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// Throws GuardExceeded before any training if the instance is too large.
inline OracleCheck run_oracle_check(const io::Problem& p, std::uint64_t seed,
                                    std::size_t rollouts = kStochasticRollouts) {
  const auto& task = p.task;
  if (outcome_leaf_bound(p.grid, task) > kDefaultLeafGuard) {
    throw GuardExceeded("outcome enumeration for this instance exceeds the guard");
  }
  learn::StepReward model_reward(p.reward, p.grid, p.hyper.exp_clamp);
  auto mdp = env::build_explicit_tau_mdp(
      p.grid, task.tau, [&](const env::TauState& w) { return model_reward(w); });

  OracleCheck out;
  out.deterministic = p.grid.p_slip() == 0.0;
  out.tau_states = mdp.num_states();
  const int horizon = task.T + 1;
  const auto vi = value_iteration(mdp, p.hyper.gamma, horizon);
  out.optimal_value = vi.initial_value;
  const std::function<env::Action(const env::TauState&)> optimal = [&](const env::TauState& w) {
    return vi.stationary[mdp.index.at(w)];
  };
  out.optimal_robust_probability = exact_robust_probability(p.grid, task, optimal);

  auto trained = learn::train(p.grid, task, p.reward, p.hyper, seed);
  out.q_entries = trained.q.entry_count();
  const auto policy = learn::greedy_policy(trained.q);
  const std::function<env::Action(const env::TauState&)> as_fn = std::cref(policy);
  out.learned_value = policy_value(mdp, as_fn, p.hyper.gamma, horizon);
  out.exact_robust_probability = exact_robust_probability(p.grid, task, as_fn);
  out.optimality_gap = std::abs(out.exact_robust_probability - out.optimal_robust_probability);
  out.value_gap = relative_gap(out.learned_value, out.optimal_value);

  if (out.deterministic) {
    Rng rng(derive_seed(seed, 1));
    out.mc_robust_probability =
        eval::score_trajectory(task, eval::rollout(p.grid, policy, task, rng)).robust_ok ? 1.0 : 0.0;
    out.probability_gap = std::abs(out.mc_robust_probability - out.exact_robust_probability);
    out.pass = out.value_gap <= kDeterministicTolerance && out.probability_gap == 0.0;
    return out;
  }

  learn::StepReward sim_reward(p.reward, p.grid, p.hyper.exp_clamp);
  double value_sum = 0.0;
  std::size_t robust = 0;
  for (std::size_t i = 0; i < rollouts; ++i) {
    Rng rng(derive_seed(seed, 2 * i + 2));
    value_sum += eval::discounted_return(p.grid, policy, task, sim_reward, p.hyper.gamma, rng);
    Rng rng2(derive_seed(seed, 2 * i + 3));
    robust += eval::score_trajectory(task, eval::rollout(p.grid, policy, task, rng2)).robust_ok;
  }
  out.learned_value_mc = value_sum / static_cast<double>(rollouts);
  out.mc_robust_probability = static_cast<double>(robust) / static_cast<double>(rollouts);
  out.probability_gap = std::abs(out.mc_robust_probability - out.exact_robust_probability);
  out.pass = out.probability_gap <= kStochasticTolerance && out.optimality_gap <= kStochasticTolerance;
  return out;
}

}  // namespace strl::oracle
