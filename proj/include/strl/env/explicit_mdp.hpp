#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <functional>
#include <unordered_map>
#include <vector>

#include "strl/env/grid_world.hpp"
#include "strl/env/tau_state.hpp"
#include "strl/error.hpp"

namespace strl::env {

/// Fully enumerated tau-MDP: states are the tau-windows reachable from the
/// padded initial window; rewards are attached to the window entered.
struct ExplicitTauMdp {
  struct Transition {
    std::size_t to;
    double p;
  };

  std::vector<TauState> states;
  std::unordered_map<TauState, std::size_t> index;
  /// transitions[s][a] lists successor states with positive probability.
  std::vector<std::array<std::vector<Transition>, kNumActions>> transitions;
  std::vector<double> reward;
  /// Fewest steps from the initial window.
  std::vector<int> first_visit;
  std::size_t initial = 0;

  std::size_t num_states() const noexcept { return states.size(); }
  std::size_t num_pairs() const noexcept { return states.size() * kNumActions; }
};

inline constexpr std::size_t kDefaultStateGuard = 1'000'000;

/// Breadth-first closure of the windows reachable from tau_init(start, tau).
/// `reward` is evaluated once per enumerated window; omit it for a zero model.
inline ExplicitTauMdp build_explicit_tau_mdp(const GridWorld& grid, int tau,
                                             const std::function<double(const TauState&)>& reward = {},
                                             std::size_t guard = kDefaultStateGuard) {
  ExplicitTauMdp m;
  auto intern = [&](const TauState& w, int depth) {
    auto [it, inserted] = m.index.try_emplace(w, m.states.size());
    if (inserted) {
      if (m.states.size() >= guard) {
        throw GuardExceeded("tau-MDP enumeration exceeds " + std::to_string(guard) + " states");
      }
      m.states.push_back(w);
      m.first_visit.push_back(depth);
    }
    return std::pair{it->second, inserted};
  };

  std::deque<std::size_t> frontier;
  m.initial = intern(tau_init(grid.start(), tau), 0).first;
  frontier.push_back(m.initial);
  while (!frontier.empty()) {
    const std::size_t s = frontier.front();
    frontier.pop_front();
    if (m.transitions.size() <= s) m.transitions.resize(s + 1);
    const TauState w = m.states[s];
    const int depth = m.first_visit[s];
    for (Action a : kActions) {
      auto& row = m.transitions[s][static_cast<std::size_t>(a)];
      for (const auto& [dest, p] : grid.transition(w.back(), a)) {
        auto [to, inserted] = intern(tau_shift(w, dest), depth + 1);
        if (inserted) frontier.push_back(to);
        row.push_back({to, p});
      }
    }
  }
  m.transitions.resize(m.states.size());
  m.reward.resize(m.states.size(), 0.0);
  if (reward) {
    for (std::size_t s = 0; s < m.states.size(); ++s) m.reward[s] = reward(m.states[s]);
  }
  return m;
}

}  // namespace strl::env
