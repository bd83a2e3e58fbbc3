#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strl/error.hpp"
#include "strl/stl/formula.hpp"
#include "strl/util/rng.hpp"

namespace strl::env {

enum class Action : std::uint8_t { up, down, left, right, stay };

inline constexpr std::size_t kNumActions = 5;

/// Fixed tie-break order for greedy choices.
inline constexpr std::array<Action, kNumActions> kActions = {Action::up, Action::down, Action::left,
                                                            Action::right, Action::stay};

inline constexpr std::array<Action, 4> kMoves = {Action::up, Action::down, Action::left,
                                                 Action::right};

inline std::string_view action_name(Action a) {
  static constexpr std::array<std::string_view, kNumActions> names = {"up", "down", "left", "right",
                                                                     "stay"};
  return names[static_cast<std::size_t>(a)];
}

inline Action action_from_name(std::string_view name) {
  for (Action a : kActions) {
    if (action_name(a) == name) return a;
  }
  throw ConfigError("unknown action '" + std::string(name) + "'");
}

/// Grid cell (column x, row y). Row 0 is the top edge.
struct Cell {
  int x = 0;
  int y = 0;

  auto operator<=>(const Cell&) const = default;
};

inline bool adjacent_or_equal(Cell a, Cell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) <= 1;
}

/// n x n grid with a slip kernel: the commanded action is executed with
/// probability 1 - p_slip, otherwise replaced by a uniformly drawn move
/// (never `stay`). Moves off the boundary leave the cell unchanged.
class GridWorld {
 public:
  GridWorld(int n, stl::RegionTable regions, double p_slip, Cell start)
      : n_(n), regions_(std::move(regions)), p_slip_(p_slip), start_(start) {
    if (n_ < 1) throw ConfigError("grid size must be positive");
    if (!(p_slip_ >= 0.0 && p_slip_ <= 1.0)) throw ConfigError("p_slip must lie in [0, 1]");
    if (!contains(start_)) throw ConfigError("start cell lies outside the grid");
    for (const auto& [name, box] : regions_) {
      if (box.lo.size() != 2 || box.hi.size() != 2) {
        throw ConfigError("region '" + name + "' must be two-dimensional");
      }
      for (std::size_t i = 0; i < 2; ++i) {
        if (box.lo[i] < 0 || box.hi[i] > n_ || box.lo[i] > box.hi[i]) {
          throw ConfigError("region '" + name + "' does not lie within [0," + std::to_string(n_) +
                            "]^2");
        }
      }
    }
  }

  int size() const noexcept { return n_; }
  std::size_t num_cells() const noexcept { return static_cast<std::size_t>(n_) * n_; }
  const stl::RegionTable& regions() const noexcept { return regions_; }
  double p_slip() const noexcept { return p_slip_; }
  Cell start() const noexcept { return start_; }

  bool contains(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < n_ && c.y < n_; }

  /// Row-major index.
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * n_ + c.x; }
  Cell cell(std::size_t index) const {
    return {static_cast<int>(index % n_), static_cast<int>(index / n_)};
  }

  /// Deterministic effect of an action.
  Cell apply(Cell c, Action a) const {
    Cell next = c;
    switch (a) {
      case Action::up: --next.y; break;
      case Action::down: ++next.y; break;
      case Action::left: --next.x; break;
      case Action::right: ++next.x; break;
      case Action::stay: break;
    }
    return contains(next) ? next : c;
  }

  Cell step(Cell c, Action a, Rng& rng) const {
    if (p_slip_ > 0.0 && uniform01(rng) < p_slip_) {
      a = kMoves[static_cast<std::size_t>(uniform_index(rng, 4))];
    }
    return apply(c, a);
  }

  /// Closed-form kernel row P(c, a, .), merged by destination and sorted.
  std::vector<std::pair<Cell, double>> transition(Cell c, Action a) const {
    std::vector<std::pair<Cell, double>> row;
    auto add = [&](Cell dest, double p) {
      if (p <= 0.0) return;
      for (auto& [cell, q] : row) {
        if (cell == dest) {
          q += p;
          return;
        }
      }
      row.emplace_back(dest, p);
    };
    add(apply(c, a), 1.0 - p_slip_);
    for (Action m : kMoves) add(apply(c, m), p_slip_ / 4.0);
    std::sort(row.begin(), row.end());
    return row;
  }

  /// Center point of a cell in workspace units.
  std::vector<double> center(Cell c) const { return {c.x + 0.5, c.y + 0.5}; }

 private:
  int n_;
  stl::RegionTable regions_;
  double p_slip_;
  Cell start_;
};

}  // namespace strl::env
