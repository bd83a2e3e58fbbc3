#pragma once

#include <algorithm>
#include <cstddef>
#include <string>

#include "strl/learn/q_learning.hpp"
#include "strl/stl/formula.hpp"

namespace strl::eval {

inline constexpr std::size_t kMovingAverageWindow = 100;

/// CSV with columns episode,reward,reward_ma100,alpha,epsilon. The moving
/// average is over the trailing (up to) 100 episodes.
inline std::string learning_curve_csv(const learn::LearningCurve& curve) {
  std::string out = "episode,reward,reward_ma100,alpha,epsilon\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    // Rewards span many orders of magnitude, so no running-sum subtraction.
    const std::size_t first = i + 1 > kMovingAverageWindow ? i + 1 - kMovingAverageWindow : 0;
    double window_sum = 0.0;
    for (std::size_t j = first; j <= i; ++j) window_sum += curve[j].reward;
    const auto width = static_cast<double>(i + 1 - first);
    out += std::to_string(curve[i].episode) + "," + stl::format_number(curve[i].reward) + "," +
           stl::format_number(window_sum / width) + "," + stl::format_number(curve[i].alpha) + "," +
           stl::format_number(curve[i].epsilon) + "\n";
  }
  return out;
}

}  // namespace strl::eval
