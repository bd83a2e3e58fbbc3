#pragma once

#include "json.hpp"
#include "strl/eval/evaluate.hpp"

namespace strl::io {

inline nlohmann::json to_json(const eval::EvalReport& r) {
  return {{"n_traj", r.n_traj},       {"sat_rate", r.sat_rate},     {"robust_rate", r.robust_rate},
          {"mean_rho", r.mean_rho},   {"mean_theta", r.mean_theta}, {"q_entries", r.q_entries}};
}

inline nlohmann::json to_json(const eval::TrajectoryRecord& rec) {
  nlohmann::json samples = nlohmann::json::array();
  for (std::size_t i = 0; i < rec.signal.size(); ++i) {
    auto p = rec.signal[i];
    samples.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return {{"signal", samples},
          {"sat", rec.sat},
          {"theta", rec.theta},
          {"robust_ok", rec.robust_ok},
          {"rho", rec.rho},
          {"rho_delta", rec.rho_delta},
          {"episodic_reward", rec.episodic_reward},
          {"window_robust", rec.window_robust}};
}

}  // namespace strl::io
