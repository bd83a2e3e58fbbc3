#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "strl/error.hpp"
#include "strl/stl/formula.hpp"
#include "strl/stl/signal.hpp"

namespace strl::stl {

/// Robustness of `true`. Finite so that min/max and exponentiation never
/// produce NaN.
inline constexpr double kTrueRobustness = 1e9;

inline double predicate_robustness(const node::Predicate& p, std::span<const double> point) {
  if (p.axis >= point.size()) {
    throw EvaluationError("predicate on axis " + std::to_string(p.axis) +
                          " but signal dimension is " + std::to_string(point.size()));
  }
  return p.cmp == Comparison::less ? p.threshold - point[p.axis] : point[p.axis] - p.threshold;
}

/// Signed infinity-norm margin of `point` to the boundary of `box`.
inline double region_margin(const Box& box, std::span<const double> point) {
  if (box.lo.size() > point.size()) {
    throw EvaluationError("region of dimension " + std::to_string(box.lo.size()) +
                          " but signal dimension is " + std::to_string(point.size()));
  }
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    m = std::min(m, std::min(point[i] - box.lo[i], box.hi[i] - point[i]));
  }
  return m;
}

inline double region_robustness(const node::Region& r, std::span<const double> point) {
  if (!r.box) throw EvaluationError("region '" + r.name + "' is unresolved");
  return region_margin(*r.box, point);
}

namespace detail {

// Bottom-up evaluation over a contiguous block of time points. Each temporal
// node asks its children for exactly the extended block it reads.
class TraceMonitor {
 public:
  explicit TraceMonitor(const Signal& s) : s_(s) {
    if (s.empty()) throw EvaluationError("cannot monitor an empty signal");
  }

  std::vector<double> trace(const Formula& phi, std::ptrdiff_t t0, std::size_t count) const {
    return std::visit(
        overloaded{
            [&](const node::True&) { return std::vector<double>(count, kTrueRobustness); },
            [&](const node::Predicate& p) {
              std::vector<double> out(count);
              for (std::size_t k = 0; k < count; ++k) out[k] = predicate_robustness(p, at(t0, k));
              return out;
            },
            [&](const node::Region& r) {
              std::vector<double> out(count);
              for (std::size_t k = 0; k < count; ++k) out[k] = region_robustness(r, at(t0, k));
              return out;
            },
            [&](const node::Not& n) {
              auto out = trace(n.child, t0, count);
              for (auto& v : out) v = -v;
              return out;
            },
            [&](const node::And& n) {
              auto out = trace(n.lhs, t0, count);
              auto rhs = trace(n.rhs, t0, count);
              for (std::size_t k = 0; k < count; ++k) out[k] = std::min(out[k], rhs[k]);
              return out;
            },
            [&](const node::Or& n) {
              auto out = trace(n.lhs, t0, count);
              auto rhs = trace(n.rhs, t0, count);
              for (std::size_t k = 0; k < count; ++k) out[k] = std::max(out[k], rhs[k]);
              return out;
            },
            [&](const node::Until& n) { return until(n, t0, count); },
            [&](const node::Eventually& n) { return sliding(n.iv, n.child, t0, count, true); },
            [&](const node::Always& n) { return sliding(n.iv, n.child, t0, count, false); },
        },
        phi.node());
  }

 private:
  std::span<const double> at(std::ptrdiff_t t0, std::size_t k) const {
    return s_.at(t0 + static_cast<std::ptrdiff_t>(k));
  }

  std::vector<double> sliding(Interval iv, const Formula& child, std::ptrdiff_t t0,
                              std::size_t count, bool take_max) const {
    const auto width = static_cast<std::size_t>(iv.hi - iv.lo);
    auto inner = trace(child, t0 + iv.lo, count + width - 1);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
      auto first = inner.begin() + static_cast<std::ptrdiff_t>(k);
      auto last = first + static_cast<std::ptrdiff_t>(width);
      out[k] = take_max ? *std::max_element(first, last) : *std::min_element(first, last);
    }
    return out;
  }

  std::vector<double> until(const node::Until& n, std::ptrdiff_t t0, std::size_t count) const {
    const auto span = static_cast<std::size_t>(n.iv.hi);
    // lhs is read on [t, t + b - 1), rhs on [t + a, t + b).
    auto lhs = trace(n.lhs, t0, count + span - 1);
    auto rhs = trace(n.rhs, t0, count + span - 1);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
      double best = -std::numeric_limits<double>::infinity();
      double guard = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < span; ++j) {
        if (j >= static_cast<std::size_t>(n.iv.lo)) best = std::max(best, std::min(rhs[k + j], guard));
        guard = std::min(guard, lhs[k + j]);
      }
      out[k] = best;
    }
    return out;
  }

  const Signal& s_;
};

}  // namespace detail

/// Robustness trace of `phi` at times t0, t0+1, ..., t0+count-1.
inline std::vector<double> robustness_trace(const Formula& phi, const Signal& s, std::ptrdiff_t t0,
                                            std::size_t count) {
  return detail::TraceMonitor(s).trace(phi, t0, count);
}

inline double spatial_robustness(const Formula& phi, const Signal& s, std::ptrdiff_t t) {
  return robustness_trace(phi, s, t, 1).front();
}

/// Strict: zero robustness is a violation.
inline bool boolean_sat(const Formula& phi, const Signal& s, std::ptrdiff_t t) {
  return spatial_robustness(phi, s, t) > 0.0;
}

inline int characteristic(const Formula& phi, const Signal& s, std::ptrdiff_t t) {
  return boolean_sat(phi, s, t) ? 1 : -1;
}

/// Largest d <= d_max such that the verdict at every t' in [t - d, t] equals
/// the verdict at t.
inline int consistent_delay(const Formula& phi, const Signal& s, std::ptrdiff_t t, int d_max) {
  if (d_max < 1) throw EvaluationError("d_max must be at least 1");
  auto rho = robustness_trace(phi, s, t - d_max, static_cast<std::size_t>(d_max) + 1);
  const bool sat = rho.back() > 0.0;
  int d = 0;
  for (auto it = rho.rbegin() + 1; it != rho.rend() && ((*it > 0.0) == sat); ++it) ++d;
  return d;
}

/// Right temporal robustness, saturated at +-d_max.
inline int temporal_robustness(const Formula& phi, const Signal& s, std::ptrdiff_t t, int d_max) {
  return characteristic(phi, s, t) * consistent_delay(phi, s, t, d_max);
}

/// Satisfied at t and under every delay up to `delta`. Agrees with
/// `temporal_robustness(...) >= delta` except that a violated verdict with a
/// zero-length consistent delay never counts as robust.
inline bool temporally_robust(const Formula& phi, const Signal& s, std::ptrdiff_t t, int delta,
                              int d_max) {
  return boolean_sat(phi, s, t) && consistent_delay(phi, s, t, d_max) >= delta;
}

namespace detail {

inline void check_window(const Formula& phi, const Signal& w, int delta) {
  if (delta < 0) throw EvaluationError("delta must be nonnegative");
  const auto need = static_cast<std::size_t>(horizon_length(phi) + delta);
  if (w.size() != need) {
    throw EvaluationError("window has " + std::to_string(w.size()) + " samples, expected " +
                          std::to_string(need));
  }
}

inline Signal delayed_slice(const Formula& phi, const Signal& w, int d) {
  const auto h = static_cast<std::size_t>(horizon_length(phi));
  return w.slice(static_cast<std::ptrdiff_t>(w.size() - h) - d, h);
}

}  // namespace detail

/// Satisfaction of `phi` on the window's trace delayed by d samples.
inline bool delayed_sat(const Formula& phi, const Signal& w, int d) {
  const int h = horizon_length(phi);
  if (d < 0) throw EvaluationError("delay must be nonnegative");
  if (static_cast<int>(w.size()) < h + d) {
    throw EvaluationError("window of " + std::to_string(w.size()) + " samples cannot be delayed by " +
                          std::to_string(d) + " for horizon " + std::to_string(h));
  }
  return boolean_sat(phi, detail::delayed_slice(phi, w, d), 0);
}

/// 1 iff the window satisfies `phi` under every delay d in [0, delta].
inline int rb(const Formula& phi, const Signal& w, int delta) {
  detail::check_window(phi, w, delta);
  for (int d = 0; d <= delta; ++d) {
    if (!delayed_sat(phi, w, d)) return 0;
  }
  return 1;
}

/// Minimum robustness of `phi` over the delayed slices d in [0, delta].
inline double window_worst_robustness(const Formula& phi, const Signal& w, int delta) {
  detail::check_window(phi, w, delta);
  double worst = std::numeric_limits<double>::infinity();
  for (int d = 0; d <= delta; ++d) {
    worst = std::min(worst, spatial_robustness(phi, detail::delayed_slice(phi, w, d), 0));
  }
  return worst;
}

/// min over d in [0, delta] of the robustness of `phi` on s delayed by d.
inline double worst_shifted_robustness(const Formula& phi, const Signal& s, int delta) {
  if (delta < 0) throw EvaluationError("delta must be nonnegative");
  auto rho = robustness_trace(phi, s, -delta, static_cast<std::size_t>(delta) + 1);
  return *std::min_element(rho.begin(), rho.end());
}

}  // namespace strl::stl
