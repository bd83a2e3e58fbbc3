#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>

#include "strl/error.hpp"
#include "strl/stl/formula.hpp"
#include "strl/stl/monitor.hpp"
#include "strl/stl/signal.hpp"

// Reference semantics for differential testing: the textbook recursion, one
// time point at a time, with F, G and | expanded to their primitive forms.
namespace strl::oracle {

using stl::Formula;
namespace node = stl::node;

namespace detail {

inline std::vector<double> sample(const stl::Signal& s, std::ptrdiff_t t) {
  if (s.size() == 0) throw EvaluationError("empty signal");
  std::size_t i = 0;
  if (t > 0) i = static_cast<std::size_t>(t) >= s.size() ? s.size() - 1 : static_cast<std::size_t>(t);
  auto p = s[i];
  return {p.begin(), p.end()};
}

inline double until(const Formula& lhs, const Formula& rhs, stl::Interval iv, const stl::Signal& s,
                    std::ptrdiff_t t);

inline double robustness(const Formula& phi, const stl::Signal& s, std::ptrdiff_t t) {
  if (phi.as<node::True>()) return stl::kTrueRobustness;
  if (auto* p = phi.as<node::Predicate>()) {
    auto x = sample(s, t);
    if (p->axis >= x.size()) throw EvaluationError("predicate axis out of range");
    // a > c is !(a < c) with the sign flipped into the threshold
    return p->cmp == stl::Comparison::less ? p->threshold - x[p->axis] : x[p->axis] - p->threshold;
  }
  if (auto* r = phi.as<node::Region>()) {
    if (!r->box) throw EvaluationError("region '" + r->name + "' is unresolved");
    auto x = sample(s, t);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r->box->lo.size(); ++i) {
      m = std::min(m, x[i] - r->box->lo[i]);
      m = std::min(m, r->box->hi[i] - x[i]);
    }
    return m;
  }
  if (auto* n = phi.as<node::Not>()) return -robustness(n->child, s, t);
  if (auto* n = phi.as<node::And>()) {
    return std::min(robustness(n->lhs, s, t), robustness(n->rhs, s, t));
  }
  if (auto* n = phi.as<node::Or>()) {
    return -std::min(-robustness(n->lhs, s, t), -robustness(n->rhs, s, t));
  }
  if (auto* n = phi.as<node::Until>()) return until(n->lhs, n->rhs, n->iv, s, t);
  if (auto* n = phi.as<node::Eventually>()) {
    return until(Formula::truth(), n->child, n->iv, s, t);
  }
  if (auto* n = phi.as<node::Always>()) {
    return -until(Formula::truth(), Formula::negation(n->child), n->iv, s, t);
  }
  throw EvaluationError("unknown formula node");
}

inline double until(const Formula& lhs, const Formula& rhs, stl::Interval iv, const stl::Signal& s,
                    std::ptrdiff_t t) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t t1 = t + iv.lo; t1 < t + iv.hi; ++t1) {
    double value = robustness(rhs, s, t1);
    for (std::ptrdiff_t t2 = t; t2 < t1; ++t2) value = std::min(value, robustness(lhs, s, t2));
    best = std::max(best, value);
  }
  return best;
}

}  // namespace detail

inline double naive_robustness(const Formula& phi, const stl::Signal& s, std::ptrdiff_t t) {
  return detail::robustness(phi, s, t);
}

/// s delayed by d samples: the first d samples repeat s_0.
inline stl::Signal delayed_signal(const stl::Signal& s, int d) {
  stl::Signal out(s.dimension());
  for (int k = 0; k < d; ++k) out.push_back(s[0]);
  for (std::size_t k = 0; k < s.size(); ++k) out.push_back(s[k]);
  return out;
}

/// Largest d <= d_max keeping the verdict at t unchanged under every delay
/// d' <= d, found by building each delayed signal explicitly.
inline int naive_consistent_delay(const Formula& phi, const stl::Signal& s, int d_max,
                                  std::ptrdiff_t t = 0) {
  const bool sat = naive_robustness(phi, s, t) > 0.0;
  int d = 0;
  while (d < d_max && (naive_robustness(phi, delayed_signal(s, d + 1), t) > 0.0) == sat) ++d;
  return d;
}

inline int naive_theta(const Formula& phi, const stl::Signal& s, int d_max, std::ptrdiff_t t = 0) {
  if (d_max < 1) throw EvaluationError("d_max must be at least 1");
  const int chi = naive_robustness(phi, s, t) > 0.0 ? 1 : -1;
  return chi * naive_consistent_delay(phi, s, d_max, t);
}

}  // namespace strl::oracle
