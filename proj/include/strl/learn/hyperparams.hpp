#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "strl/error.hpp"
#include "strl/learn/exp_safe.hpp"

namespace strl::learn {

/// value_i = max(initial * decay^i, floor)
struct Schedule {
  double initial = 0.95;
  double decay = 0.999;
  double floor = 0.0001;

  double at(std::size_t episode) const {
    return std::max(initial * std::pow(decay, static_cast<double>(episode)), floor);
  }
};

struct Hyperparams {
  double beta = 50.0;
  double gamma = 0.9999;
  std::size_t episodes = 10'000;
  Schedule alpha{0.95, 0.999, 0.0001};
  Schedule epsilon{0.95, 0.999, 0.05};
  double exp_clamp = kDefaultExpClamp;
  double rho_scale = 1.0;

  void validate() const {
    if (!(beta > 0.0)) throw ConfigError("beta must be positive");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
    if (!(alpha.initial > 0.0 && alpha.initial <= 1.0 && alpha.floor > 0.0 && alpha.floor <= 1.0 &&
          alpha.decay > 0.0 && alpha.decay <= 1.0)) {
      throw ConfigError("alpha schedule must stay within (0, 1]");
    }
    if (!(epsilon.initial >= 0.0 && epsilon.initial <= 1.0 && epsilon.floor >= 0.0 &&
          epsilon.floor <= 1.0 && epsilon.decay > 0.0 && epsilon.decay <= 1.0)) {
      throw ConfigError("epsilon schedule must stay within [0, 1]");
    }
    if (!(exp_clamp > 0.0)) throw ConfigError("exp_clamp must be positive");
    if (!(rho_scale > 0.0)) throw ConfigError("rho_scale must be positive");
  }
};

}  // namespace strl::learn
