#pragma once

#include <string>
#include <string_view>

#include "strl/env/grid_world.hpp"
#include "strl/env/tau_state.hpp"
#include "strl/error.hpp"
#include "strl/learn/exp_safe.hpp"
#include "strl/stl/monitor.hpp"
#include "strl/stl/task.hpp"

namespace strl::learn {

/// prob: reward shaped from the delay-robust indicator of the window.
/// strob: reward shaped from the worst delayed robustness of the window.
enum class Variant { prob, strob };

inline std::string_view variant_name(Variant v) { return v == Variant::prob ? "prob" : "strob"; }

inline Variant variant_from_name(std::string_view s) {
  if (s == "prob") return Variant::prob;
  if (s == "strob") return Variant::strob;
  throw ConfigError("unknown reward variant '" + std::string(s) + "' (expected prob or strob)");
}

struct RewardSpec {
  Variant variant = Variant::prob;
  stl::Outer outer = stl::Outer::eventually;
  stl::Formula phi = stl::Formula::truth();  // inner sub-formula, resolved
  int delta = 0;
  double beta = 50.0;
  double rho_scale = 1.0;

  static RewardSpec for_task(const stl::TaskSpec& task, Variant variant, double beta,
                             double rho_scale = 1.0) {
    return RewardSpec{variant, task.outer, task.inner, task.delta, beta, rho_scale};
  }

  int tau() const { return stl::horizon_length(phi) + delta; }
};

/// Step reward on a tau-window:
///   F tasks:  exp(beta * x)    G tasks:  -exp(-beta * x)
/// where x is rb(phi, w, delta) for `prob` and the worst delayed robustness
/// (times rho_scale) for `strob`.
class StepReward {
 public:
  StepReward(RewardSpec spec, const env::GridWorld& grid, double exp_clamp = kDefaultExpClamp)
      : spec_(std::move(spec)), grid_(&grid), exp_(exp_clamp), tau_(spec_.tau()) {}

  double operator()(const env::TauState& w) {
    if (static_cast<int>(w.size()) != tau_) {
      throw EvaluationError("window has " + std::to_string(w.size()) + " cells, reward expects " +
                            std::to_string(tau_));
    }
    return shaped(quality(env::window_to_signal(w, *grid_)));
  }

  /// The quantity being shaped: rb for `prob`, scaled worst robustness for `strob`.
  double quality(const stl::Signal& w) const {
    if (spec_.variant == Variant::prob) return stl::rb(spec_.phi, w, spec_.delta);
    return spec_.rho_scale * stl::window_worst_robustness(spec_.phi, w, spec_.delta);
  }

  double shaped(double x) {
    return spec_.outer == stl::Outer::eventually ? exp_(spec_.beta * x) : -exp_(-spec_.beta * x);
  }

  const RewardSpec& spec() const noexcept { return spec_; }
  std::size_t clamp_count() const noexcept { return exp_.clamp_count(); }

 private:
  RewardSpec spec_;
  const env::GridWorld* grid_;
  ExpSafe exp_;
  int tau_;
};

}  // namespace strl::learn
