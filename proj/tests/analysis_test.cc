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

#include "mwu_lab/analysis.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

#include "mwu_lab/builtin_games.hpp"
#include "mwu_lab/game_io.hpp"
#include "oracles.hpp"

namespace mwu_lab {
namespace {

TEST(RandomGameTest, DeterministicAndValid) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = random_game(seed);
    const auto b = random_game(seed);
    EXPECT_EQ(game_to_json(a).dump(), game_to_json(b).dump());
    EXPECT_GE(a.num_agents(), 2u);
    EXPECT_LE(a.num_agents(), 4u);
    EXPECT_LE(a.num_edges(), 5u);
    for (std::size_t i = 0; i < a.num_agents(); ++i) {
      EXPECT_LE(a.num_strategies(i), 4u);
      auto list = a.strategies(i);
      std::sort(list.begin(), list.end());
      EXPECT_EQ(std::adjacent_find(list.begin(), list.end()), list.end());
    }
    for (const auto& table : a.cost_tables()) {
      for (std::size_t k = 0; k < table.size(); ++k) {
        EXPECT_GT(table[k], 0.0);
        EXPECT_LE(table[k], 1.0);
        if (k > 0) {
          EXPECT_GE(table[k], table[k - 1]);
        }
      }
    }
  }
  EXPECT_NE(game_to_json(random_game(1)).dump(), game_to_json(random_game(2)).dump());
  EXPECT_THROW(random_game(1, 5, 2, 2), InvalidConfig);
}

// 1/β̂ bounds every expected strategy cost.
TEST(RandomGameTest, CostBoundDominatesSampledCosts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_game(seed);
    Rng rng(seed);
    for (int k = 0; k < 100; ++k) {
      const auto p = random_interior_profile(g, rng, 0.0);
      for (std::size_t i = 0; i < g.num_agents(); ++i) {
        for (double c : expected_strategy_costs(g, p, i)) EXPECT_LE(c, g.cost_bound() + 1e-15);
      }
    }
  }
}

TEST(RngTest, FixedStreams) {
  Rng a(42);
  Rng b(42);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(a.uniform(), b.uniform());
  Rng c(1);
  for (int k = 0; k < 1000; ++k) {
    const double u = c.uniform_open_closed();
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
    const auto n = c.integer(2, 4);
    EXPECT_GE(n, 2u);
    EXPECT_LE(n, 4u);
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(ParallelMapTest, ResultsIndependentOfThreadCount) {
  const auto square = [](std::size_t k) { return k * k; };
  ::setenv("MWU_LAB_THREADS", "1", 1);
  const auto one = parallel_map(100, square);
  ::setenv("MWU_LAB_THREADS", "7", 1);
  EXPECT_EQ(worker_count(), 7u);
  const auto seven = parallel_map(100, square);
  ::unsetenv("MWU_LAB_THREADS");
  EXPECT_EQ(one, seven);
  EXPECT_EQ(seven[9], 81u);
  EXPECT_THROW(parallel_map(10,
                            [](std::size_t k) -> int {
                              if (k == 3) throw InvalidConfig("boom");
                              return 0;
                            }),
               InvalidConfig);
}

TEST(LyapunovTest, LinearRandomSuiteHasNoViolations) {
  ExperimentConfig config;
  config.num_games = 20;
  config.starts = 3;
  config.run.max_iters = 300;
  const auto report = verify_lyapunov(config);
  EXPECT_EQ(report.records.size(), 60u);
  EXPECT_EQ(report.total_violations(), 0u);
  const auto again = verify_lyapunov(config);
  EXPECT_EQ(lyapunov_report_json(report).dump(), lyapunov_report_json(again).dump());
}

TEST(LyapunovTest, FixedPointStartCountsNoSteps) {
  ExperimentConfig config;
  config.games = {builtin_game1()};
  config.rate = builtin_rate1();
  config.start = 0.5;
  const auto report = verify_lyapunov(config);
  ASSERT_EQ(report.records.size(), 1u);
  EXPECT_EQ(report.records[0].steps, 0u);
  EXPECT_EQ(report.records[0].violations, 0u);
}

TEST(LyapunovTest, ExponentialGame1RaisesPotential) {
  ExperimentConfig config;
  config.games = {builtin_game1()};
  config.rate = builtin_rate1();
  config.variant = Variant::kExponential;
  config.start = 0.3;
  const auto report = verify_lyapunov(config);
  EXPECT_GT(report.total_violations(), 0u);
}

TEST(LyapunovTest, ConfigValidation) {
  ExperimentConfig config;
  config.margin = 0.3;
  EXPECT_THROW(verify_lyapunov(config), InvalidConfig);
  config.margin = 0.05;
  config.bounds.max_agents = 9;
  EXPECT_THROW(verify_lyapunov(config), InvalidConfig);
}

TEST(RateSweepTest, Game1Outcomes) {
  const auto g1 = builtin_game1();
  const std::vector<MixedProfile> starts{MixedProfile::first_strategy_weight(g1, 0.3)};
  const auto exp = rate_sweep(g1, Variant::kExponential,
                              {builtin_rate1(), LearningRate::from_epsilon(0.01)}, starts);
  ASSERT_EQ(exp.size(), 2u);
  EXPECT_EQ(exp[0].label, "periodic-2");
  ASSERT_TRUE(exp[0].certificate.has_value());
  EXPECT_LE(exp[0].certificate->residual, 1e-10);
  EXPECT_EQ(exp[1].label, "converged");
  EXPECT_NEAR(exp[1].samples[0], 0.5, 1e-8);
  const auto lin = rate_sweep(
      g1, Variant::kLinear,
      {LearningRate::from_epsilon(0.1), LearningRate::from_epsilon(0.6), builtin_rate1()}, starts);
  for (const auto& o : lin) EXPECT_EQ(o.label, "converged");
  const auto csv = bifurcation_csv(exp);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epsilon,one_minus_epsilon,start,outcome,period,p00");
  EXPECT_THROW(rate_sweep(g1, Variant::kLinear, {LearningRate::from_epsilon(1.0)}, starts),
               InadmissibleRate);
}

TEST(BasinTest, EvenIteratesReachTheTwoCycle) {
  const auto h = onedim::h_map();
  const double rho1 = oracle::kRho1;
  const auto records = basin_sample(h, {0.1, 0.3, 0.5, 0.9}, {rho1, 1 - rho1});
  EXPECT_EQ(records[0].outcome, BasinOutcome::kTarget);
  EXPECT_EQ(records[1].outcome, BasinOutcome::kTarget);
  EXPECT_EQ(records[2].outcome, BasinOutcome::kFlagged);
  EXPECT_EQ(records[3].outcome, BasinOutcome::kTarget);
  EXPECT_EQ(uniform_starts(3, 5), uniform_starts(3, 5));
  EXPECT_NE(basin_csv(records).find("flagged"), std::string::npos);
}

}  // namespace
}  // namespace mwu_lab
