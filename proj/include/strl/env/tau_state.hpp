#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "strl/env/grid_world.hpp"
#include "strl/error.hpp"
#include "strl/stl/signal.hpp"

namespace strl::env {

/// The last tau visited cells, oldest first.
class TauState {
 public:
  TauState() = default;
  explicit TauState(std::vector<Cell> cells) : cells_(std::move(cells)) {}

  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  Cell back() const { return cells_.back(); }
  Cell operator[](std::size_t i) const { return cells_[i]; }

  auto operator<=>(const TauState&) const = default;

 private:
  std::vector<Cell> cells_;
};

inline TauState tau_init(Cell s0, int tau) {
  if (tau < 1) throw EvaluationError("tau must be at least 1");
  return TauState(std::vector<Cell>(static_cast<std::size_t>(tau), s0));
}

/// Drops the oldest cell and appends `next`, which must be one grid step
/// (or no step) away from the newest cell.
inline TauState tau_shift(const TauState& w, Cell next) {
  if (w.size() == 0) throw EvaluationError("cannot shift an empty window");
  if (!adjacent_or_equal(w.back(), next)) {
    throw EvaluationError("cell (" + std::to_string(next.x) + "," + std::to_string(next.y) +
                          ") is not reachable in one step from (" + std::to_string(w.back().x) +
                          "," + std::to_string(w.back().y) + ")");
  }
  std::vector<Cell> cells(w.cells().begin() + 1, w.cells().end());
  cells.push_back(next);
  return TauState(std::move(cells));
}

inline stl::Signal window_to_signal(const TauState& w, const GridWorld& grid) {
  stl::Signal s(2);
  for (Cell c : w.cells()) s.push_back(grid.center(c));
  return s;
}

inline stl::Signal cells_to_signal(const std::vector<Cell>& cells, const GridWorld& grid) {
  return window_to_signal(TauState(cells), grid);
}

}  // namespace strl::env

template <>
struct std::hash<strl::env::TauState> {
  std::size_t operator()(const strl::env::TauState& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto c : w.cells()) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(c.x) * 0x10001u + static_cast<unsigned>(c.y));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};
