#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "strl/env/explicit_mdp.hpp"
#include "strl/eval/evaluate.hpp"
#include "strl/learn/exp_safe.hpp"
#include "strl/learn/q_learning.hpp"
#include "strl/learn/qtable.hpp"
#include "strl/learn/reward.hpp"
#include "strl/oracle/value_iteration.hpp"
#include "strl/stl/parser.hpp"
#include "support/problems.hpp"

using namespace strl;
using env::Action;
using env::Cell;
using env::TauState;

namespace {

TauState window(std::initializer_list<Cell> cells) { return TauState(std::vector<Cell>(cells)); }

}  // namespace

// exp_safe and log-sum-exp

TEST(ExpSafe, Values) {
  learn::ExpSafe e;
  EXPECT_EQ(e(0.0), 1.0);
  EXPECT_DOUBLE_EQ(e(50.0), std::exp(50.0));
  EXPECT_NEAR(e(50.0) / 5.1847e21, 1.0, 1e-4);
  EXPECT_EQ(e.clamp_count(), 0u);
}

TEST(ExpSafe, ClampsAndCounts) {
  learn::ExpSafe e;
  EXPECT_EQ(e(1e6), std::exp(700.0));
  EXPECT_EQ(e(-1e6), std::exp(-700.0));
  EXPECT_EQ(e.clamp_count(), 2u);
  EXPECT_TRUE(std::isfinite(e(1e300)));
  EXPECT_THROW(learn::ExpSafe(0.0), ConfigError);
}

TEST(LogSumExp, Sandwich) {
  Rng rng(21);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (double beta : {1.0, 10.0, 50.0}) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto n = static_cast<std::size_t>(uniform_index(rng, 20) + 1);
      std::vector<double> x(n);
      for (auto& v : x) v = u(rng);
      const double hi = *std::max_element(x.begin(), x.end());
      const double lo = *std::min_element(x.begin(), x.end());
      const double slack = std::log(static_cast<double>(n)) / beta;
      const double smax = learn::log_sum_exp(x, beta);
      EXPECT_GE(smax, hi - 1e-9);
      EXPECT_LE(smax, hi + slack + 1e-9);
      const double smin = learn::log_sum_exp_min(x, beta);
      EXPECT_LE(smin, lo + 1e-9);
      EXPECT_GE(smin, lo - slack - 1e-9);
    }
  }
  EXPECT_THROW(learn::log_sum_exp(std::vector<double>{}, 1.0), EvaluationError);
}

TEST(LogSumExp, LargeArgumentsStayFinite) {
  std::vector<double> x{1e4, 1e4 - 1, -1e4};
  EXPECT_NEAR(learn::log_sum_exp(x, 50.0), 1e4, 1e-9);
  EXPECT_NEAR(learn::log_sum_exp_min(x, 50.0), -1e4, 1e-9);
}

// Schedules

TEST(Schedule, MatchesClosedForm) {
  learn::Hyperparams h;
  for (std::size_t i = 0; i <= 10000; ++i) {
    EXPECT_EQ(h.alpha.at(i), std::max(0.95 * std::pow(0.999, static_cast<double>(i)), 0.0001));
    EXPECT_EQ(h.epsilon.at(i), std::max(0.95 * std::pow(0.999, static_cast<double>(i)), 0.05));
    EXPECT_GT(h.alpha.at(i), 0.0);
    EXPECT_LE(h.alpha.at(i), 1.0);
  }
  EXPECT_EQ(h.alpha.at(0), 0.95);
  EXPECT_EQ(h.alpha.at(9999), 0.0001);
  EXPECT_EQ(h.epsilon.at(9999), 0.05);
}

TEST(Schedule, ValidationRejectsBadValues) {
  learn::Hyperparams h;
  h.gamma = 1.5;
  EXPECT_THROW(h.validate(), ConfigError);
  h = {};
  h.alpha.floor = 0;
  EXPECT_THROW(h.validate(), ConfigError);
  h = {};
  h.beta = -1;
  EXPECT_THROW(h.validate(), ConfigError);
  h = {};
  h.rho_scale = 0;
  EXPECT_THROW(h.validate(), ConfigError);
}

// Q-table mechanics

TEST(QUpdate, HandEvaluation) {
  learn::QTable q;
  auto w = window({{0, 0}});
  auto next = window({{1, 0}});
  q.set(w, Action::right, 2.0);
  q.set(next, Action::down, 3.0);
  learn::q_update(q, w, Action::right, 1.0, next, 0.5, 0.5, false);
  EXPECT_EQ(q.value(w, Action::right), 2.25);
}

TEST(QUpdate, FullOverwriteAndNoOp) {
  learn::QTable q;
  auto w = window({{0, 0}});
  auto next = window({{1, 0}});
  q.set(w, Action::up, -7.0);
  q.set(next, Action::up, 100.0);
  learn::q_update(q, w, Action::up, 4.0, next, 1.0, 0.0, false);
  EXPECT_EQ(q.value(w, Action::up), 4.0);
  learn::q_update(q, w, Action::up, 99.0, next, 0.0, 0.9, false);
  EXPECT_EQ(q.value(w, Action::up), 4.0);
}

TEST(QUpdate, TerminalHasNoBootstrap) {
  learn::QTable q;
  auto w = window({{0, 0}});
  auto next = window({{1, 0}});
  q.set(next, Action::stay, 50.0);
  learn::q_update(q, w, Action::left, 1.0, next, 1.0, 1.0, true);
  EXPECT_EQ(q.value(w, Action::left), 1.0);
}

TEST(QTable, EntriesAreCountedOnWrite) {
  learn::QTable q;
  auto w = window({{0, 0}, {0, 1}});
  EXPECT_EQ(q.value(w, Action::down), 0.0);
  EXPECT_EQ(q.entry_count(), 0u);
  q.set(w, Action::down, 1.0);
  q.set(w, Action::down, 2.0);
  q.set(w, Action::stay, 0.0);
  EXPECT_EQ(q.entry_count(), 2u);
  EXPECT_EQ(q.state_count(), 1u);
  EXPECT_EQ(q.sorted_entries().size(), 2u);
}

TEST(SelectAction, GreedyAndTieOrder) {
  learn::QTable q;
  Rng rng(22);
  auto w = window({{1, 1}});
  EXPECT_EQ(learn::select_action(q, w, 0.0, rng), Action::up);
  q.set(w, Action::right, 0.5);
  EXPECT_EQ(learn::select_action(q, w, 0.0, rng), Action::right);
  q.set(w, Action::left, 0.5);
  EXPECT_EQ(learn::select_action(q, w, 0.0, rng), Action::left);
}

TEST(SelectAction, UniformWhenFullyExploring) {
  learn::QTable q;
  auto w = window({{1, 1}});
  q.set(w, Action::stay, 10.0);
  Rng rng(23);
  std::array<int, env::kNumActions> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(learn::select_action(q, w, 1.0, rng))];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.2, 0.01);
}

TEST(GreedyPolicy, EmptyTableChoosesUp) {
  auto pi = learn::greedy_policy(learn::QTable{});
  EXPECT_EQ(pi(window({{2, 2}})), Action::up);
  EXPECT_EQ(pi(window({{0, 0}, {0, 1}})), Action::up);
}

TEST(GreedyPolicy, InvariantUnderPositiveScaling) {
  auto p = fuzz::tiny_problem(0.1, "prob", 500);
  auto q = learn::train(p.grid, p.task, p.reward, p.hyper, 5).q;
  learn::QTable doubled;
  for (const auto& [w, a, v] : q.sorted_entries()) doubled.set(w, a, 2 * v);
  auto pi = learn::greedy_policy(q);
  auto pi2 = learn::greedy_policy(doubled);
  for (const auto& [w, row] : q.rows()) EXPECT_EQ(pi(w), pi2(w));
}

// Step rewards

TEST(StepReward, ProbabilisticEventually) {
  auto p = fuzz::tiny_problem();
  learn::StepReward r(p.reward, p.grid);
  EXPECT_DOUBLE_EQ(r(window({{2, 1}, {2, 1}})), std::exp(50.0));
  EXPECT_EQ(r(window({{1, 1}, {2, 1}})), 1.0);
  EXPECT_EQ(r(window({{0, 0}, {0, 0}})), 1.0);
  EXPECT_THROW(r(window({{0, 0}})), EvaluationError);
}

TEST(StepReward, StrobAlwaysExample) {
  auto phi = stl::resolve(stl::parse_formula("G[0,4) in(Goal)"), fuzz::tiny_problem().grid.regions());
  auto task = stl::TaskSpec::from_formula(phi, 0);
  auto spec = learn::RewardSpec::for_task(task, learn::Variant::strob, 50.0);
  auto grid = fuzz::tiny_problem().grid;
  learn::StepReward r(spec, grid);
  const auto w = window({{1, 1}});
  EXPECT_EQ(stl::window_worst_robustness(task.inner, env::window_to_signal(w, grid), 0), -0.5);
  EXPECT_DOUBLE_EQ(r(w), -std::exp(25.0));
}

TEST(StepReward, RewardSetsOfTheIndicatorVariant) {
  for (const char* text : {"F[0,5) in(Goal)", "G[0,5) F[0,2) in(Goal)"}) {
    auto grid = fuzz::tiny_problem().grid;
    auto task = stl::TaskSpec::from_formula(stl::resolve(stl::parse_formula(text), grid.regions()), 1);
    learn::StepReward r(learn::RewardSpec::for_task(task, learn::Variant::prob, 50.0), grid);
    auto m = env::build_explicit_tau_mdp(grid, task.tau);
    const bool eventually = task.outer == stl::Outer::eventually;
    for (const auto& w : m.states) {
      const double v = r(w);
      if (eventually) {
        EXPECT_TRUE(v == 1.0 || v == std::exp(50.0)) << v;
      } else {
        EXPECT_TRUE(v == -1.0 || v == -std::exp(-50.0)) << v;
      }
    }
  }
}

TEST(StepReward, StrobScaling) {
  auto grid = fuzz::tiny_problem().grid;
  auto task = stl::TaskSpec::from_formula(stl::resolve(stl::parse_formula("F[0,5) in(Goal)"), grid.regions()), 0);
  learn::StepReward r(learn::RewardSpec::for_task(task, learn::Variant::strob, 50.0, 0.1), grid);
  EXPECT_DOUBLE_EQ(r(window({{2, 1}})), std::exp(50.0 * 0.1 * 0.5));
}

// Training

TEST(Train, ZeroEpisodes) {
  auto p = fuzz::tiny_problem(0.0, "prob", 0);
  auto result = learn::train(p.grid, p.task, p.reward, p.hyper, 1);
  EXPECT_TRUE(result.q.empty());
  EXPECT_TRUE(result.curve.empty());
}

TEST(Train, RejectsMismatchedRewardSpec) {
  auto p = fuzz::tiny_problem();
  auto spec = p.reward;
  spec.delta = 0;
  EXPECT_THROW(learn::train(p.grid, p.task, spec, p.hyper, 1), ConfigError);
}

TEST(Train, DeterministicGivenSeed) {
  auto p = fuzz::tiny_problem(0.1, "strob", 800);
  auto a = learn::train(p.grid, p.task, p.reward, p.hyper, 9);
  auto b = learn::train(p.grid, p.task, p.reward, p.hyper, 9);
  EXPECT_EQ(a.q.sorted_entries(), b.q.sorted_entries());
  ASSERT_EQ(a.curve.size(), b.curve.size());
  for (std::size_t i = 0; i < a.curve.size(); ++i) {
    EXPECT_EQ(a.curve[i].reward, b.curve[i].reward);
    EXPECT_EQ(a.curve[i].alpha, b.curve[i].alpha);
    EXPECT_EQ(a.curve[i].epsilon, b.curve[i].epsilon);
  }
  auto c = learn::train(p.grid, p.task, p.reward, p.hyper, 10);
  EXPECT_NE(a.q.sorted_entries(), c.q.sorted_entries());
}

TEST(Train, CurveRecordsSchedules) {
  auto p = fuzz::tiny_problem(0.0, "prob", 50);
  auto result = learn::train(p.grid, p.task, p.reward, p.hyper, 1);
  ASSERT_EQ(result.curve.size(), 50u);
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(result.curve[i].episode, i);
    EXPECT_EQ(result.curve[i].alpha, p.hyper.alpha.at(i));
    EXPECT_EQ(result.curve[i].epsilon, p.hyper.epsilon.at(i));
    EXPECT_GE(result.curve[i].reward, p.task.T + 1.0);
  }
}

TEST(Train, TinyGridReachesGoal) {
  auto p = fuzz::tiny_problem(0.0, "prob", 5000);
  auto result = learn::train(p.grid, p.task, p.reward, p.hyper, 3);
  auto pi = learn::greedy_policy(result.q);
  learn::StepReward reward(p.reward, p.grid);
  Rng rng(1);
  auto cells = eval::rollout_cells(p.grid, pi, p.task, rng);
  bool reached = false;
  bool collected = false;
  auto w = env::tau_init(p.grid.start(), p.task.tau);
  for (std::size_t t = 1; t < cells.size(); ++t) {
    reached = reached || cells[t] == Cell{2, 1};
    w = env::tau_shift(w, cells[t]);
    collected = collected || reward(w) == std::exp(50.0);
  }
  EXPECT_TRUE(reached);
  EXPECT_TRUE(collected);
  EXPECT_TRUE(eval::score_trajectory(p.task, env::cells_to_signal(cells, p.grid)).robust_ok);
}

TEST(Train, GreedyActionsAreOptimalOnReachableWindows) {
  auto p = fuzz::tiny_problem(0.0, "prob", 5000);
  auto result = learn::train(p.grid, p.task, p.reward, p.hyper, 3);
  auto pi = learn::greedy_policy(result.q);
  learn::StepReward reward(p.reward, p.grid);
  auto m = env::build_explicit_tau_mdp(p.grid, p.task.tau, [&](const TauState& w) { return reward(w); });
  const int horizon = p.task.T + 1;
  auto vi = oracle::value_iteration(m, p.hyper.gamma, horizon);

  // Walk the greedy path and compare each chosen action's step-k Q value
  // with the optimum at that step.
  std::size_t s = m.initial;
  std::vector<double> next(m.num_states(), 0.0);
  std::vector<std::vector<double>> values(static_cast<std::size_t>(horizon) + 1, next);
  for (int k = horizon - 1; k >= 0; --k) {
    for (std::size_t i = 0; i < m.num_states(); ++i) {
      double best = -1e300;
      for (Action a : env::kActions) {
        double qv = 0;
        for (const auto& tr : m.transitions[i][static_cast<std::size_t>(a)]) {
          qv += tr.p * (m.reward[tr.to] + p.hyper.gamma * values[static_cast<std::size_t>(k) + 1][tr.to]);
        }
        best = std::max(best, qv);
      }
      values[static_cast<std::size_t>(k)][i] = best;
    }
  }
  EXPECT_DOUBLE_EQ(values[0][m.initial], vi.initial_value);
  for (int k = 0; k < horizon; ++k) {
    const Action a = pi(m.states[s]);
    const auto& row = m.transitions[s][static_cast<std::size_t>(a)];
    ASSERT_EQ(row.size(), 1u);
    const double chosen = m.reward[row[0].to] + p.hyper.gamma * values[static_cast<std::size_t>(k) + 1][row[0].to];
    EXPECT_NEAR(chosen / values[static_cast<std::size_t>(k)][s], 1.0, 1e-9) << "step " << k;
    s = row[0].to;
  }
}
