// Copyright 2026 The mwu_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mwu_lab/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "mwu_lab/analysis.hpp"
#include "mwu_lab/builtin_games.hpp"
#include "oracles.hpp"

namespace mwu_lab {
namespace {

std::vector<double> Epsilons(const LearningRates& rates) {
  std::vector<double> out;
  for (const auto& r : rates) out.push_back(r.epsilon());
  return out;
}

void ExpectRowsNear(const MixedProfile& p, const oracle::Rows& q, double tol) {
  ASSERT_EQ(p.num_agents(), q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t g = 0; g < q[i].size(); ++g) EXPECT_NEAR(p(i, g), q[i][g], tol);
  }
}

TEST(LearningRateTest, ComplementIsKeptExactly) {
  const auto r = builtin_rate2();
  EXPECT_EQ(r.epsilon(), 1.0);  // 1 − e^{−40} rounds to one
  EXPECT_DOUBLE_EQ(r.log_complement(), -40.0);
  EXPECT_NEAR(builtin_rate1().log_complement(), -10.0, 1e-15);
  EXPECT_THROW(LearningRate::from_epsilon(0.0), InadmissibleRate);
  EXPECT_THROW(LearningRate::from_epsilon(-0.1), InadmissibleRate);
  EXPECT_THROW(LearningRate::from_complement(0.0), InadmissibleRate);
  EXPECT_THROW(LearningRate::from_complement(1.0), InadmissibleRate);
}

TEST(StepTest, MatchesTextbookFormulas) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_game(seed);
    Rng rng(seed + 99);
    const auto p = random_interior_profile(g, rng);
    const auto lin = random_rates(g, rng, Variant::kLinear);
    const auto exp = random_rates(g, rng, Variant::kExponential);
    ExpectRowsNear(step_linear(g, p, lin), oracle::linear_step(g, p.blocks(), Epsilons(lin)),
                   1e-12);
    ExpectRowsNear(step_exponential(g, p, exp),
                   oracle::exponential_step(g, p.blocks(), Epsilons(exp)), 1e-12);
  }
}

TEST(StepTest, StaysOnSimplexAndKeepsZeros) {
  const auto g = random_game(11);
  Rng rng(11);
  auto rows = random_interior_profile(g, rng).blocks();
  rows[0][0] += rows[0][1];
  rows[0][1] = 0.0;
  const MixedProfile p(g, rows);
  for (auto variant : {Variant::kLinear, Variant::kExponential}) {
    const auto q = step(g, p, random_rates(g, rng, variant), variant);
    EXPECT_EQ(q(0, 1), 0.0);
    for (const auto& row : q.blocks()) {
      double sum = 0.0;
      for (double v : row) {
        EXPECT_GE(v, 0.0);
        sum += v;
      }
      EXPECT_NEAR(sum, 1.0, 1e-15);
    }
  }
}

TEST(StepTest, FixedPointsAreFixed) {
  const auto g1 = builtin_game1();
  const auto half = MixedProfile::first_strategy_weight(g1, 0.5);
  const auto rates = uniform_rates(g1, builtin_rate1());
  EXPECT_TRUE(is_fixed_point(g1, half));
  EXPECT_EQ(step_linear(g1, half, rates), half);
  EXPECT_EQ(step_exponential(g1, half, rates), half);
  // Pure profiles are fixed points whether or not they are equilibria.
  const auto pure = MixedProfile::pure(g1, PureProfile{{0, 0}});
  EXPECT_TRUE(is_fixed_point(g1, pure));
  EXPECT_GT(nash_residual(g1, pure), 0.0);
  EXPECT_FALSE(is_fixed_point(g1, MixedProfile::first_strategy_weight(g1, 0.3)));
}

TEST(StepTest, Admissibility) {
  const auto g1 = builtin_game1();
  const auto p = MixedProfile::uniform(g1);
  EXPECT_THROW(step_linear(g1, p, uniform_rates(g1, LearningRate::from_epsilon(1.0))),
               InadmissibleRate);
  EXPECT_THROW(step_exponential(g1, p, uniform_rates(g1, LearningRate::from_epsilon(1.5))),
               InadmissibleRate);
  EXPECT_THROW(step_linear(g1, p, {builtin_rate1()}), InadmissibleRate);
  EXPECT_THROW(check_linear_admissible(g1, uniform_rates(g1, LearningRate::from_epsilon(1.0))),
               InadmissibleRate);
  // game2 has 1/β̂ = 0.7, so even ε = 1 is admissible for MWU_ℓ.
  const auto g2 = builtin_game2();
  EXPECT_NO_THROW(check_linear_admissible(g2, uniform_rates(g2, builtin_rate2())));
}

// Exponential step with ε = 1 − e^{−40} on game2 reduces to G.
TEST(StepTest, ExtremeRateUsesComplement) {
  const auto g2 = builtin_game2();
  const auto rates = uniform_rates(g2, builtin_rate2());
  for (double x : {0.1, 0.4, 0.42158751523414224, 0.9}) {
    const auto next = step_exponential(g2, MixedProfile::first_strategy_weight(g2, x), rates);
    EXPECT_NEAR(next(0, 0), oracle::g(x), 1e-13);
  }
}

TEST(RunTest, LinearGame1ConvergesQuickly) {
  const auto g1 = builtin_game1();
  const auto traj = run(g1, MixedProfile::first_strategy_weight(g1, 0.3),
                        uniform_rates(g1, builtin_rate1()), Variant::kLinear);
  EXPECT_EQ(traj.termination, Termination::kConverged);
  EXPECT_LE(traj.steps.size(), 10u);
  EXPECT_NEAR(traj.last()(0, 0), 0.5, 1e-12);
  ASSERT_TRUE(traj.initial_q.has_value());
  double q = *traj.initial_q;
  for (const auto& s : traj.steps) {
    ASSERT_TRUE(s.q.has_value());
    EXPECT_GE(*s.q, q - 1e-13);
    q = *s.q;
  }
}

TEST(RunTest, LinearGame2ReachesThreeQuarters) {
  const auto g2 = builtin_game2();
  const auto traj = run(g2, MixedProfile::first_strategy_weight(g2, 0.3),
                        uniform_rates(g2, builtin_rate2()), Variant::kLinear);
  EXPECT_EQ(traj.termination, Termination::kConverged);
  EXPECT_NEAR(traj.last()(0, 0), 0.75, 1e-8);
  EXPECT_NEAR(traj.last()(1, 0), 0.75, 1e-8);
}

TEST(RunTest, ExponentialGame1Cycles) {
  const auto g1 = builtin_game1();
  const auto traj = run(g1, MixedProfile::first_strategy_weight(g1, 0.3),
                        uniform_rates(g1, builtin_rate1()), Variant::kExponential);
  EXPECT_EQ(traj.termination, Termination::kCycleDetected);
  EXPECT_EQ(traj.period, 2u);
  EXPECT_FALSE(traj.steps.back().q.has_value());
  const double x = traj.last()(0, 0);
  EXPECT_NEAR(std::min(std::abs(x - oracle::kRho1), std::abs(x - (1 - oracle::kRho1))), 0.0,
              1e-9);
}

TEST(RunTest, MaxItersAndConfigErrors) {
  const auto g1 = builtin_game1();
  const auto p = MixedProfile::first_strategy_weight(g1, 0.3);
  const auto rates = uniform_rates(g1, LearningRate::from_epsilon(0.01));
  RunOptions o;
  o.max_iters = 3;
  const auto traj = run(g1, p, rates, Variant::kLinear, o);
  EXPECT_EQ(traj.termination, Termination::kMaxIters);
  EXPECT_EQ(traj.steps.size(), 3u);
  o.fp_tol = 0.0;
  EXPECT_THROW(run(g1, p, rates, Variant::kLinear, o), InvalidConfig);
  EXPECT_EQ(to_string(Termination::kCycleDetected), "cycle_detected");
  EXPECT_EQ(to_string(Variant::kExponential), "exp");
}

TEST(RunTest, StartAtFixedPointConvergesInOneStep) {
  const auto g1 = builtin_game1();
  const auto traj = run(g1, MixedProfile::first_strategy_weight(g1, 0.5),
                        uniform_rates(g1, builtin_rate1()), Variant::kExponential);
  EXPECT_EQ(traj.termination, Termination::kConverged);
  EXPECT_EQ(traj.steps.size(), 1u);
  EXPECT_EQ(traj.steps[0].step_norm, 0.0);
}

TEST(RunTest, QValue) {
  const LearningRates rates{LearningRate::from_epsilon(0.5), LearningRate::from_epsilon(0.25)};
  EXPECT_DOUBLE_EQ(q_value(rates, 1.0), 5.0);
}

}  // namespace
}  // namespace mwu_lab
