#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "strl/env/explicit_mdp.hpp"
#include "strl/env/grid_world.hpp"

namespace strl::oracle {

using env::Action;
using env::ExplicitTauMdp;

struct ValueIterationResult {
  /// Optimal reward-to-go at step 0 for every enumerated state.
  std::vector<double> value;
  /// policy[k][s]: optimal action at step k.
  std::vector<std::vector<Action>> policy;
  /// Action at each state's first reachable step (first action if the state
  /// is not reachable within the horizon).
  std::vector<Action> stationary;
  double initial_value = 0.0;
};

namespace detail {

inline double backup(const ExplicitTauMdp& m, std::size_t s, Action a, double gamma,
                     const std::vector<double>& next) {
  double q = 0.0;
  for (const auto& tr : m.transitions[s][static_cast<std::size_t>(a)]) {
    q += tr.p * (m.reward[tr.to] + gamma * next[tr.to]);
  }
  return q;
}

}  // namespace detail

/// Finite-horizon backward induction; the value after `horizon` steps is zero.
inline ValueIterationResult value_iteration(const ExplicitTauMdp& m, double gamma, int horizon) {
  const std::size_t n = m.num_states();
  ValueIterationResult out;
  out.policy.assign(static_cast<std::size_t>(horizon), std::vector<Action>(n, env::kActions[0]));
  std::vector<double> next(n, 0.0), cur(n, 0.0);
  for (int k = horizon - 1; k >= 0; --k) {
    for (std::size_t s = 0; s < n; ++s) {
      double best = 0.0;
      Action arg = env::kActions[0];
      for (std::size_t i = 0; i < env::kNumActions; ++i) {
        const double q = detail::backup(m, s, env::kActions[i], gamma, next);
        if (i == 0 || q > best) {
          best = q;
          arg = env::kActions[i];
        }
      }
      cur[s] = best;
      out.policy[static_cast<std::size_t>(k)][s] = arg;
    }
    std::swap(cur, next);
  }
  out.value = next;
  out.stationary.assign(n, env::kActions[0]);
  for (std::size_t s = 0; s < n; ++s) {
    if (m.first_visit[s] < horizon) {
      out.stationary[s] = out.policy[static_cast<std::size_t>(m.first_visit[s])][s];
    }
  }
  out.initial_value = horizon > 0 ? out.value[m.initial] : 0.0;
  return out;
}

/// Exact expected discounted reward of a stationary window policy over
/// `horizon` steps from the initial state.
inline double policy_value(const ExplicitTauMdp& m,
                           const std::function<Action(const env::TauState&)>& policy, double gamma,
                           int horizon) {
  const std::size_t n = m.num_states();
  std::vector<Action> act(n);
  for (std::size_t s = 0; s < n; ++s) act[s] = policy(m.states[s]);
  std::vector<double> next(n, 0.0), cur(n, 0.0);
  for (int k = horizon - 1; k >= 0; --k) {
    for (std::size_t s = 0; s < n; ++s) cur[s] = detail::backup(m, s, act[s], gamma, next);
    std::swap(cur, next);
  }
  return next[m.initial];
}

/// Sup-norm residuals ||V_{k+1} - V_k|| of repeated infinite-horizon Bellman
/// sweeps starting from V_0 = 0.
inline std::vector<double> bellman_residuals(const ExplicitTauMdp& m, double gamma, int sweeps) {
  const std::size_t n = m.num_states();
  std::vector<double> v(n, 0.0), w(n, 0.0), residuals;
  for (int k = 0; k < sweeps; ++k) {
    double res = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (Action a : env::kActions) best = std::max(best, detail::backup(m, s, a, gamma, v));
      w[s] = best;
      res = std::max(res, std::abs(w[s] - v[s]));
    }
    std::swap(v, w);
    residuals.push_back(res);
  }
  return residuals;
}

}  // namespace strl::oracle
