#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "strl/error.hpp"
#include "strl/learn/exp_safe.hpp"
#include "strl/stl/monitor.hpp"
#include "strl/stl/task.hpp"

namespace strl::eval {

struct ObjectiveTerms {
  double j0 = 0.0;  // min_d of max_t (F) / min_t (G) of rho
  double j1 = 0.0;  // min_d of sum_t of +-exp(+-beta rho)
  double j2 = 0.0;  // sum_t of +-exp(+-beta min_d rho)
};

/// rho(phi, window_t, d) for t in [0, T] (rows) and d in [0, delta] (columns).
inline std::vector<std::vector<double>> delayed_robustness_table(const stl::TaskSpec& task,
                                                                 const stl::Signal& s) {
  if (s.size() != static_cast<std::size_t>(task.T) + 1) {
    throw EvaluationError("trajectory has " + std::to_string(s.size()) + " samples, expected " +
                          std::to_string(task.T + 1));
  }
  const int h = stl::horizon_length(task.inner);
  std::vector<std::vector<double>> table(static_cast<std::size_t>(task.T) + 1);
  for (int t = 0; t <= task.T; ++t) {
    const stl::Signal w = stl::window_at(task, s, t);
    for (int d = 0; d <= task.delta; ++d) {
      const stl::Signal slice = w.slice(task.tau - h - d, static_cast<std::size_t>(h));
      table[static_cast<std::size_t>(t)].push_back(stl::spatial_robustness(task.inner, slice, 0));
    }
  }
  return table;
}

inline ObjectiveTerms objective_terms(const stl::TaskSpec& task, const stl::Signal& s, double beta,
                                      learn::ExpSafe& exp_safe) {
  const auto table = delayed_robustness_table(task, s);
  const bool f_task = task.outer == stl::Outer::eventually;
  auto shaped = [&](double rho) { return f_task ? exp_safe(beta * rho) : -exp_safe(-beta * rho); };

  ObjectiveTerms out;
  out.j0 = std::numeric_limits<double>::infinity();
  out.j1 = std::numeric_limits<double>::infinity();
  for (int d = 0; d <= task.delta; ++d) {
    double agg = f_task ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& row : table) {
      const double rho = row[static_cast<std::size_t>(d)];
      agg = f_task ? std::max(agg, rho) : std::min(agg, rho);
      sum += shaped(rho);
    }
    out.j0 = std::min(out.j0, agg);
    out.j1 = std::min(out.j1, sum);
  }
  for (const auto& row : table) out.j2 += shaped(*std::min_element(row.begin(), row.end()));
  return out;
}

inline ObjectiveTerms estimate_objectives(const std::vector<stl::Signal>& trajectories,
                                          const stl::TaskSpec& task, double beta,
                                          double exp_clamp = learn::kDefaultExpClamp) {
  if (trajectories.empty()) throw EvaluationError("no trajectories to estimate from");
  learn::ExpSafe exp_safe(exp_clamp);
  ObjectiveTerms mean;
  for (const auto& s : trajectories) {
    auto terms = objective_terms(task, s, beta, exp_safe);
    mean.j0 += terms.j0;
    mean.j1 += terms.j1;
    mean.j2 += terms.j2;
  }
  const auto n = static_cast<double>(trajectories.size());
  mean.j0 /= n;
  mean.j1 /= n;
  mean.j2 /= n;
  return mean;
}

}  // namespace strl::eval
