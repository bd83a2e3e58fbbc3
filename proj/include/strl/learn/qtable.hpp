#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "strl/env/grid_world.hpp"
#include "strl/env/tau_state.hpp"

namespace strl::learn {

using env::Action;
using env::TauState;

/// Action values over (window, action) pairs. Entries are created on first
/// write; reads of absent entries return 0.
class QTable {
 public:
  struct Row {
    std::array<double, env::kNumActions> value{};
    std::uint8_t present = 0;  // bit i set when action i has an entry

    bool has(Action a) const { return (present >> static_cast<unsigned>(a)) & 1u; }
  };

  double value(const TauState& w, Action a) const {
    auto it = rows_.find(w);
    return it == rows_.end() ? 0.0 : it->second.value[static_cast<std::size_t>(a)];
  }

  std::array<double, env::kNumActions> values(const TauState& w) const {
    auto it = rows_.find(w);
    return it == rows_.end() ? std::array<double, env::kNumActions>{} : it->second.value;
  }

  double max_value(const TauState& w) const {
    auto v = values(w);
    return *std::max_element(v.begin(), v.end());
  }

  void set(const TauState& w, Action a, double v) {
    Row& row = rows_[w];
    const auto bit = static_cast<std::uint8_t>(1u << static_cast<unsigned>(a));
    if (!(row.present & bit)) {
      row.present |= bit;
      ++entries_;
    }
    row.value[static_cast<std::size_t>(a)] = v;
  }

  std::size_t entry_count() const noexcept { return entries_; }
  std::size_t state_count() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return entries_ == 0; }

  const std::unordered_map<TauState, Row>& rows() const noexcept { return rows_; }

  /// All stored entries ordered by (window, action).
  std::vector<std::tuple<TauState, Action, double>> sorted_entries() const {
    std::vector<std::tuple<TauState, Action, double>> out;
    out.reserve(entries_);
    for (const auto& [w, row] : rows_) {
      for (Action a : env::kActions) {
        if (row.has(a)) out.emplace_back(w, a, row.value[static_cast<std::size_t>(a)]);
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
      return std::tie(std::get<0>(l), std::get<1>(l)) < std::tie(std::get<0>(r), std::get<1>(r));
    });
    return out;
  }

 private:
  std::unordered_map<TauState, Row> rows_;
  std::size_t entries_ = 0;
};

/// First maximizer in the fixed action order.
inline Action argmax_action(const std::array<double, env::kNumActions>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return env::kActions[best];
}

/// One temporal-difference step:
/// Q(w,a) <- (1 - alpha) Q(w,a) + alpha (r + gamma max_a' Q(w',a')),
/// with no bootstrap from a terminal successor.
inline void q_update(QTable& q, const TauState& w, Action a, double r, const TauState& w_next,
                     double alpha, double gamma, bool terminal) {
  const double bootstrap = terminal ? 0.0 : q.max_value(w_next);
  q.set(w, a, (1.0 - alpha) * q.value(w, a) + alpha * (r + gamma * bootstrap));
}

/// Epsilon-greedy choice; the greedy branch breaks ties by the fixed order.
inline Action select_action(const QTable& q, const TauState& w, double epsilon, Rng& rng) {
  if (epsilon > 0.0 && uniform01(rng) < epsilon) {
    return env::kActions[static_cast<std::size_t>(uniform_index(rng, env::kNumActions))];
  }
  return argmax_action(q.values(w));
}

/// Deterministic policy over windows. Unknown windows map to the first action
/// in tie order.
class GreedyPolicy {
 public:
  GreedyPolicy() = default;
  explicit GreedyPolicy(std::unordered_map<TauState, Action> table) : table_(std::move(table)) {}

  Action operator()(const TauState& w) const {
    auto it = table_.find(w);
    return it == table_.end() ? env::kActions.front() : it->second;
  }

  std::size_t size() const noexcept { return table_.size(); }
  const std::unordered_map<TauState, Action>& table() const noexcept { return table_; }

 private:
  std::unordered_map<TauState, Action> table_;
};

inline GreedyPolicy greedy_policy(const QTable& q) {
  std::unordered_map<TauState, Action> table;
  table.reserve(q.state_count());
  for (const auto& [w, row] : q.rows()) table.emplace(w, argmax_action(row.value));
  return GreedyPolicy(std::move(table));
}

}  // namespace strl::learn
