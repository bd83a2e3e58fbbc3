#pragma once

#include "strl/env/explicit_mdp.hpp"
#include "strl/env/grid_world.hpp"
#include "strl/env/tau_state.hpp"
#include "strl/eval/evaluate.hpp"
#include "strl/eval/learning_curve.hpp"
#include "strl/eval/objectives.hpp"
#include "strl/learn/exp_safe.hpp"
#include "strl/learn/hyperparams.hpp"
#include "strl/learn/q_learning.hpp"
#include "strl/learn/qtable.hpp"
#include "strl/learn/reward.hpp"
#include "strl/stl/formula.hpp"
#include "strl/stl/monitor.hpp"
#include "strl/stl/parser.hpp"
#include "strl/stl/signal.hpp"
#include "strl/stl/task.hpp"
