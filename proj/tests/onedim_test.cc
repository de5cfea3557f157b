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

#include "mwu_lab/onedim.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "mwu_lab/builtin_games.hpp"
#include "oracles.hpp"

namespace mwu_lab::onedim {
namespace {

IntervalMap Identity() { return IntervalMap("id", 0.0, 1.0, [](double x) { return x; }); }
IntervalMap Half() { return IntervalMap("half", 0.0, 1.0, [](double x) { return x / 2; }); }

TEST(MapTest, ClosedFormsAgainstLongDouble) {
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    EXPECT_NEAR(map_h(x), oracle::h(x), 1e-14);
    EXPECT_NEAR(map_g(x), oracle::g(x), 1e-14);
  }
  EXPECT_EQ(map_h(0.0), 0.0);
  EXPECT_EQ(map_h(1.0), 1.0);
  EXPECT_EQ(map_h(0.5), 0.5);
  EXPECT_THROW(map_h(1.5), DomainError);
  EXPECT_THROW(h_map()(-0.1), DomainError);
}

TEST(MapTest, HAnchors) {
  const auto h = h_map();
  EXPECT_NEAR(h(h_critical_low()), oracle::kHx0, 1e-10);
  EXPECT_NEAR(h(h_critical_high()), oracle::kHx1, 1e-10);
  EXPECT_NEAR(h(h_critical_low()), 0.8593, 1e-4);
  EXPECT_NEAR(h(h_critical_high()), 0.1406, 1e-4);
}

TEST(MapTest, HSymmetry) {
  for (int i = 0; i <= 10000; ++i) {
    const double x = i / 10000.0;
    EXPECT_NEAR(map_h(1.0 - x), 1.0 - map_h(x), 1e-12);
  }
}

TEST(MapTest, DerivativesMatchFiniteDifferences) {
  const auto h = h_map();
  const auto g = g_map();
  for (int i = 1; i < 100; ++i) {
    const double x = i / 100.0;
    const double step = 1e-6;
    EXPECT_NEAR(h.derivative(x), (oracle::h(x + step) - oracle::h(x - step)) / (2 * step),
                1e-5 * std::max(1.0, std::abs(h.derivative(x))));
    EXPECT_NEAR(g.derivative(x), (oracle::g(x + step) - oracle::g(x - step)) / (2 * step),
                1e-5 * std::max(1.0, std::abs(g.derivative(x))));
  }
  EXPECT_NEAR(Half().derivative(0.3), 0.5, 1e-9);
  EXPECT_NEAR(Half().derivative(0.0), 0.5, 1e-9);
}

TEST(MapTest, InvarianceIsChecked) {
  EXPECT_THROW(IntervalMap("out", 0.0, 1.0, [](double x) { return 2 * x; }), DomainError);
  EXPECT_THROW(IntervalMap("empty", 1.0, 1.0, [](double x) { return x; }), DomainError);
}

TEST(IterateTest, Basics) {
  const auto g = g_map();
  EXPECT_EQ(iterate(g, 0.37, 0), 0.37);
  EXPECT_NEAR(iterate(g, 0.4, 3) - 0.4, oracle::kG3At04, 1e-6);
  EXPECT_NEAR(iterate(g, 0.5, 3) - 0.5, oracle::kG3At05, 1e-6);
  EXPECT_NEAR(iterate(g, 0.4, 3) - 0.4, -0.158, 2e-3);
  EXPECT_NEAR(iterate(g, 0.5, 3) - 0.5, 0.496, 2e-3);
  const double x = 0.3;
  EXPECT_NEAR(iterate_derivative(g, x, 2), g.derivative(g(x)) * g.derivative(x), 1e-12);
}

TEST(FixedPointTest, HSquaredHasFiveFixedPoints) {
  const auto roots = find_fixed_points(h_map(), 2);
  ASSERT_EQ(roots.size(), 5u);
  EXPECT_NEAR(roots[0].points[0], 0.0, 1e-12);
  EXPECT_NEAR(roots[1].points[0], oracle::kRho1, 1e-10);
  EXPECT_NEAR(roots[2].points[0], 0.5, 1e-12);
  EXPECT_NEAR(roots[3].points[0], 1.0 - roots[1].points[0], 1e-10);
  EXPECT_NEAR(roots[4].points[0], 1.0, 1e-12);
  EXPECT_EQ(roots[0].period, 1u);
  EXPECT_EQ(roots[1].period, 2u);
  EXPECT_EQ(roots[2].kind, OrbitKind::kFixed);
  EXPECT_EQ(kind_label(roots[3]), "periodic-2");
  for (const auto& r : roots) EXPECT_LE(r.residual, 1e-12);
}

TEST(FixedPointTest, FrozenRhoMatchesIndependentBisection) {
  EXPECT_NEAR(oracle::rho1(), oracle::kRho1, 1e-15);
}

TEST(FixedPointTest, GFixedPoints) {
  const auto roots = find_fixed_points(g_map(), 1);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(roots[0].points[0], 0.0, 1e-10);
  EXPECT_NEAR(roots[1].points[0], 0.75, 1e-10);
  EXPECT_NEAR(roots[2].points[0], 1.0, 1e-10);
}

TEST(FixedPointTest, GenuineOrbitsOfEveryPeriodUpToSix) {
  const auto g = g_map();
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto found = genuine_orbits(find_fixed_points(g, k), k);
    EXPECT_FALSE(found.empty()) << "k = " << k;
    for (const auto& c : found) {
      EXPECT_EQ(c.points.size(), k);
      EXPECT_LE(c.residual, 1e-10);
      if (k > 1) {
        EXPECT_GT(c.separation, 1e-6);
      }
    }
  }
}

TEST(FixedPointTest, IdentityIsDegenerate) {
  EXPECT_THROW(find_fixed_points(Identity(), 1), DegenerateMap);
  EXPECT_THROW(find_fixed_points(Identity(), 3), DegenerateMap);
  const auto roots = find_fixed_points(Half(), 1);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0].points[0], 0.0);
}

TEST(SignIntervalTest, HFirstDerivative) {
  const auto parts = derivative_sign_intervals(h_map(), 1);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].sign, 1);
  EXPECT_EQ(parts[1].sign, -1);
  EXPECT_EQ(parts[2].sign, 1);
  EXPECT_NEAR(parts[0].hi, (5 - std::sqrt(15.0)) / 10, 1e-8);
  EXPECT_NEAR(parts[1].hi, (5 + std::sqrt(15.0)) / 10, 1e-8);
}

TEST(SignIntervalTest, HSecondIterateOrdering) {
  const auto parts = derivative_sign_intervals(h_map(), 2);
  ASSERT_EQ(parts.size(), 5u);
  const int expected[] = {1, -1, 1, -1, 1};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(parts[k].sign, expected[k]);
  const double y0 = parts[0].hi;
  const double x0 = parts[1].hi;
  const double x1 = parts[2].hi;
  const double y1 = parts[3].hi;
  EXPECT_LT(y0, x0);
  EXPECT_LT(x0, 0.5);
  EXPECT_LT(0.5, x1);
  EXPECT_LT(x1, y1);
  // H(y₀) = x₀ and H(y₁) = x₁, where H' flips sign at H(x).
  EXPECT_NEAR(map_h(y0), h_critical_low(), 1e-7);
  EXPECT_NEAR(map_h(y1), h_critical_high(), 1e-7);
  EXPECT_GT(oracle::kRho1, x0);
  EXPECT_LT(oracle::kRho1, 0.25);
  EXPECT_GT(1 - oracle::kRho1, 0.75);
  EXPECT_LT(1 - oracle::kRho1, x1);
  EXPECT_THROW(derivative_sign_intervals(h_map(), 3), DomainError);
}

TEST(SignIntervalTest, MonotoneMap) {
  const auto parts = derivative_sign_intervals(Half(), 1);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].sign, 1);
}

TEST(Period3Test, GHasAPeriodThreeOrbit) {
  const auto g = g_map();
  const auto cert = find_period3(g, 0.4, 0.5);
  EXPECT_GT(cert.points[0], 0.4);
  EXPECT_LT(cert.points[0], 0.5);
  EXPECT_NEAR(cert.points[0], oracle::kPeriod3Point, 1e-10);
  EXPECT_LE(cert.residual, 1e-10);
  EXPECT_GT(cert.separation, 1e-3);
  const auto ly = li_yorke_from_orbit(g, cert);
  ASSERT_TRUE(ly.has_value());
  EXPECT_TRUE(ly->holds);
}

TEST(Period3Test, NoSignChange) {
  EXPECT_THROW(find_period3(h_map(), 0.4, 0.5), NoSignChange);
  EXPECT_THROW(find_period3(Identity(), 0.2, 0.8), NoSignChange);
}

TEST(LiYorkeTest, Reports) {
  const auto g = g_map();
  const auto fixed = li_yorke_certificate(g, 0.75);
  EXPECT_FALSE(fixed.holds);
  const auto at04 = li_yorke_certificate(g, 0.4);
  EXPECT_NEAR(at04.d - at04.a, -0.158, 2e-3);
  EXPECT_DOUBLE_EQ(at04.b, g(0.4));
  // Largest point of the period-3 orbit: d ≈ a > b > c.
  const auto top = li_yorke_certificate(g, iterate(g, oracle::kPeriod3Point, 1));
  EXPECT_TRUE(top.holds);
}

TEST(ScrambledPairTest, Evidence) {
  const auto g = g_map();
  const auto same = scrambled_pair_evidence(g, 0.3, 0.3, 100);
  EXPECT_EQ(same.min_gap, 0.0);
  EXPECT_EQ(same.max_gap, 0.0);
  const auto chaotic = scrambled_pair_evidence(g, 0.3, 0.3 + 1e-6, 10000);
  EXPECT_GT(chaotic.max_gap, 0.1);
  EXPECT_LT(chaotic.min_gap, 1e-6);
  // Under the linear game1 map both starts settle on 1/2 together.
  const auto g1 = builtin_game1();
  const auto lin = symmetric_reduction(g1, uniform_rates(g1, builtin_rate1()), Variant::kLinear);
  const auto early = scrambled_pair_evidence(lin, 0.3, 0.31, 1);
  const auto late = scrambled_pair_evidence(lin, iterate(lin, 0.3, 20), iterate(lin, 0.31, 20), 5);
  EXPECT_LT(late.max_gap, early.max_gap);
  EXPECT_THROW(scrambled_pair_evidence(g, 0.3, 0.4, 0), DomainError);
}

TEST(ReductionTest, MatchesClosedForms) {
  const auto g1 = builtin_game1();
  const auto g2 = builtin_game2();
  const auto rh = symmetric_reduction(g1, uniform_rates(g1, builtin_rate1()), Variant::kExponential);
  const auto rg = symmetric_reduction(g2, uniform_rates(g2, builtin_rate2()), Variant::kExponential);
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    EXPECT_NEAR(rh(x), map_h(x), 1e-12);
    EXPECT_NEAR(rg(x), map_g(x), 1e-12);
  }
}

TEST(ReductionTest, LinearGame1ConvergesToHalf) {
  const auto g1 = builtin_game1();
  const auto lin = symmetric_reduction(g1, uniform_rates(g1, builtin_rate1()), Variant::kLinear);
  for (double x : {0.05, 0.3, 0.7, 0.95}) EXPECT_NEAR(iterate(lin, x, 50), 0.5, 1e-12);
}

TEST(ReductionTest, RejectsAsymmetricGames) {
  const auto g1 = builtin_game1();
  const auto r = builtin_rate1();
  EXPECT_THROW(symmetric_reduction(g1, {r, LearningRate::from_epsilon(0.5)}, Variant::kExponential),
               AsymmetricGame);
  const CongestionGame three(3, {"a", "b"}, {{{0}, {1}}, {{0}, {1}}, {{0}, {1}}},
                             {{1, 2, 3}, {1, 2, 3}});
  EXPECT_THROW(symmetric_reduction(three, uniform_rates(three, r), Variant::kExponential),
               AsymmetricGame);
  const CongestionGame mixed(2, {"a", "b"}, {{{0}, {1}}, {{0}, {0, 1}}}, {{1, 2}, {1, 2}});
  EXPECT_THROW(symmetric_reduction(mixed, uniform_rates(mixed, r), Variant::kExponential),
               AsymmetricGame);
}

TEST(CobwebTest, Columns) {
  const auto rows = cobweb_table(h_map(), 10);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[3].size(), 5u);
  EXPECT_DOUBLE_EQ(rows[3][1], map_h(0.3));
  EXPECT_DOUBLE_EQ(rows[3][4], iterate(h_map(), 0.3, 10));
}

}  // namespace
}  // namespace mwu_lab::onedim
