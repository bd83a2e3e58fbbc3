#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "strl/error.hpp"

namespace strl::learn {

inline constexpr double kDefaultExpClamp = 700.0;

/// exp() with the exponent clamped to [-limit, limit]. Counts clamps.
class ExpSafe {
 public:
  explicit ExpSafe(double limit = kDefaultExpClamp) : limit_(limit) {
    if (!(limit > 0.0)) throw ConfigError("exp_clamp must be positive");
  }

  double operator()(double x) {
    if (x > limit_ || x < -limit_) {
      ++clamps_;
      x = std::clamp(x, -limit_, limit_);
    }
    return std::exp(x);
  }

  double limit() const noexcept { return limit_; }
  std::size_t clamp_count() const noexcept { return clamps_; }

 private:
  double limit_;
  std::size_t clamps_ = 0;
};

/// Smooth maximum (1/beta) log sum exp(beta x_i), evaluated with the maximum
/// factored out so it never overflows.
inline double log_sum_exp(std::span<const double> x, double beta) {
  if (x.empty()) throw EvaluationError("log_sum_exp of an empty vector");
  if (!(beta > 0.0)) throw EvaluationError("beta must be positive");
  const double top = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += std::exp(beta * (v - top));
  return top + std::log(sum) / beta;
}

/// Smooth minimum, -(1/beta) log sum exp(-beta x_i).
inline double log_sum_exp_min(std::span<const double> x, double beta) {
  if (x.empty()) throw EvaluationError("log_sum_exp of an empty vector");
  if (!(beta > 0.0)) throw EvaluationError("beta must be positive");
  const double bottom = *std::min_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += std::exp(-beta * (v - bottom));
  return bottom - std::log(sum) / beta;
}

}  // namespace strl::learn
