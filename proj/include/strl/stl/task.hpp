#pragma once

#include <string>

#include "strl/error.hpp"
#include "strl/stl/formula.hpp"
#include "strl/stl/monitor.hpp"

namespace strl::stl {

enum class Outer { eventually, always };

/// A task of the form F[0,H) phi or G[0,H) phi with a delay budget.
struct TaskSpec {
  Outer outer = Outer::eventually;
  int H = 1;
  Formula inner = Formula::truth();
  int delta = 0;
  int T = 0;    // last trajectory index; T + 1 = horizon_length(formula())
  int tau = 1;  // window length: horizon_length(inner) + delta

  static TaskSpec from_formula(const Formula& phi, int delta) {
    if (delta < 0) throw FormulaError("delta must be nonnegative");
    TaskSpec task;
    if (auto* f = phi.as<node::Eventually>()) {
      task.outer = Outer::eventually;
      task.H = f->iv.hi;
      task.inner = f->child;
      if (f->iv.lo != 0) throw FormulaError("task must be F[0,H) phi or G[0,H) phi");
    } else if (auto* g = phi.as<node::Always>()) {
      task.outer = Outer::always;
      task.H = g->iv.hi;
      task.inner = g->child;
      if (g->iv.lo != 0) throw FormulaError("task must be F[0,H) phi or G[0,H) phi");
    } else {
      throw FormulaError("task must be F[0,H) phi or G[0,H) phi, got " + to_string(phi));
    }
    task.delta = delta;
    task.T = horizon_length(phi) - 1;
    task.tau = horizon_length(task.inner) + delta;
    return task;
  }

  Formula formula() const {
    return outer == Outer::eventually ? Formula::eventually({0, H}, inner)
                                      : Formula::always({0, H}, inner);
  }

  /// Saturation bound used for temporal robustness of whole trajectories.
  int d_max() const { return T + 2; }
};

/// Worst-case robustness of the task over right shifts d <= delta.
inline double trajectory_worst_robustness(const TaskSpec& task, const Signal& s) {
  if (s.size() != static_cast<std::size_t>(task.T) + 1) {
    throw EvaluationError("trajectory has " + std::to_string(s.size()) + " samples, expected " +
                          std::to_string(task.T + 1));
  }
  return worst_shifted_robustness(task.formula(), s, task.delta);
}

/// The tau-sample window ending at time t, padded with s_0 before the start.
inline Signal window_at(const TaskSpec& task, const Signal& s, int t) {
  return s.slice(t - task.tau + 1, static_cast<std::size_t>(task.tau));
}

}  // namespace strl::stl
