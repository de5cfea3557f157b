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

#ifndef MWU_LAB_ACCEPTANCE_HPP
#define MWU_LAB_ACCEPTANCE_HPP

// The end-to-end checks run by the acceptance test and by
// `mwu_lab reproduce-paper`. Every tolerance is pinned here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mwu_lab/analysis.hpp"
#include "mwu_lab/baum_eagon.hpp"
#include "mwu_lab/builtin_games.hpp"
#include "mwu_lab/dynamics.hpp"
#include "mwu_lab/onedim.hpp"

namespace mwu_lab::acceptance {

// ρ₁, the smaller nontrivial fixed point of H², computed to 40 digits with
// mpmath from x = e^{5x − 2.5}(1 − x) on (x₀, 1/4) and frozen here.
inline constexpr double kRho1Reference = 0.14479410825606481;

inline constexpr std::uint64_t kLyapunovSeed = 1;
inline constexpr std::uint64_t kBaumEagonSeed = 2;
inline constexpr std::uint64_t kQCoefficientSeed = 3;
inline constexpr std::uint64_t kBasinSeed = 7;

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

inline LearningRates game_rates(const BuiltinGame& b) { return uniform_rates(b.game, b.rate); }

inline ExperimentConfig lyapunov_config() {
  ExperimentConfig config;
  config.seed = kLyapunovSeed;
  config.num_games = 100;
  config.starts = 5;
  config.run.max_iters = 500;
  return config;
}

}  // namespace detail

// 100 random games × 5 interior starts × 500 MWU_ℓ steps: Ψ never rises by
// more than 1e-13 on a step of norm above 1e-12.
inline CheckResult check_lyapunov() {
  const auto report = verify_lyapunov(detail::lyapunov_config());
  std::size_t steps = 0;
  for (const auto& r : report.records) steps += r.steps;
  return {"1", "lyapunov", report.total_violations() == 0,
          std::to_string(report.records.size()) + " trajectories, " + std::to_string(steps) +
              " counted steps, " + std::to_string(report.total_violations()) + " violations"};
}

// 50 random (game, profile, rates): the Baum-Eagon step of Q equals the
// MWU_ℓ step within 1e-12 and ∂Q/∂p_iγ = 1/ε_i − c_iγ within 1e-10.
inline CheckResult check_baum_eagon() {
  double step_gap = 0.0;
  double grad_gap = 0.0;
  for (std::size_t k = 0; k < 50; ++k) {
    const auto game = random_game(derive_seed(kBaumEagonSeed, k));
    Rng rng(derive_seed(kBaumEagonSeed + 100, k));
    const auto p = random_interior_profile(game, rng);
    const auto rates = random_q_rates(game, rng);
    const auto q = build_q(game, rates);
    const auto be = baum_eagon_step(q, p.blocks());
    const auto ml = step_linear(game, p, rates);
    const auto grad = q.gradient(p.blocks());
    std::size_t var = 0;
    for (std::size_t i = 0; i < game.num_agents(); ++i) {
      const auto costs = expected_strategy_costs(game, p, i);
      for (std::size_t g = 0; g < game.num_strategies(i); ++g, ++var) {
        step_gap = std::max(step_gap, std::abs(be[i][g] - ml(i, g)));
        grad_gap = std::max(grad_gap,
                            std::abs(grad[var] - (1.0 / rates[i].epsilon() - costs[g])));
      }
    }
  }
  return {"2", "baum-eagon", step_gap <= 1e-12 && grad_gap <= 1e-10,
          "max step gap " + detail::fmt(step_gap) + ", max gradient gap " +
              detail::fmt(grad_gap)};
}

// build_q on 50 random games has every coefficient >= -1e-12.
inline CheckResult check_q_coefficients() {
  double worst = std::numeric_limits<double>::infinity();
  std::string failure;
  for (std::size_t k = 0; k < 50 && failure.empty(); ++k) {
    const auto game = random_game(derive_seed(kQCoefficientSeed, k));
    Rng rng(derive_seed(kQCoefficientSeed + 100, k));
    try {
      const auto q = build_q(game, random_q_rates(game, rng));
      worst = std::min(worst, q.min_coefficient());
    } catch (const NegativeCoefficient& e) {
      failure = e.what();
    }
  }
  const bool ok = failure.empty() && worst >= -1e-12;
  return {"3", "q-coefficients", ok,
          ok ? "min coefficient " + detail::fmt(worst) : failure};
}

// Converged MWU_ℓ runs on the random suite are Nash within 1e-6; game1 and
// game2 converge to 1/2 and 3/4 within 1e-8.
inline CheckResult check_nash() {
  auto config = detail::lyapunov_config();
  config.run.max_iters = 20000;
  const auto report = verify_lyapunov(config);
  std::size_t converged = 0;
  double worst = 0.0;
  for (const auto& r : report.records) {
    if (r.termination != Termination::kConverged) continue;
    ++converged;
    worst = std::max(worst, r.nash_residual);
  }
  double gap1 = 0.0;
  double gap2 = 0.0;
  bool builtin_converged = true;
  for (const auto& [name, target, gap] :
       {std::tuple{"game1", 0.5, &gap1}, std::tuple{"game2", 0.75, &gap2}}) {
    const auto b = *find_builtin(name);
    const auto p0 = MixedProfile::first_strategy_weight(b.game, 0.3);
    const auto traj = run(b.game, p0, detail::game_rates(b), Variant::kLinear,
                          {5000, 1e-12, 1e-10, 1e-6, 64});
    builtin_converged = builtin_converged && traj.termination == Termination::kConverged;
    *gap = std::max(std::abs(traj.last()(0, 0) - target), std::abs(traj.last()(1, 0) - target));
  }
  const bool ok = converged > 0 && worst <= 1e-6 && builtin_converged && gap1 <= 1e-8 &&
                  gap2 <= 1e-8;
  return {"4", "nash", ok,
          std::to_string(converged) + " converged runs, max residual " + detail::fmt(worst) +
              "; game1 gap " + detail::fmt(gap1) + ", game2 gap " + detail::fmt(gap2)};
}

// Breakpoints of H' at (5 ∓ √15)/10 within 1e-8; H(x₀) = 0.8593 and
// H(x₁) = 0.1406 within 1e-4.
inline CheckResult check_h_anchors() {
  const auto h = onedim::h_map();
  const auto parts = onedim::derivative_sign_intervals(h, 1);
  const double x0 = onedim::h_critical_low();
  const double x1 = onedim::h_critical_high();
  bool ok = parts.size() == 3 && parts[0].sign > 0 && parts[1].sign < 0 && parts[2].sign > 0;
  double gap = std::numeric_limits<double>::infinity();
  if (ok) gap = std::max(std::abs(parts[0].hi - x0), std::abs(parts[1].hi - x1));
  const double hx0 = h(x0);
  const double hx1 = h(x1);
  ok = ok && gap <= 1e-8 && std::abs(hx0 - 0.8593) <= 1e-4 && std::abs(hx1 - 0.1406) <= 1e-4;
  return {"5", "h-anchors", ok,
          "breakpoint gap " + detail::fmt(gap) + ", H(x0) = " + detail::fmt(hx0) +
              ", H(x1) = " + detail::fmt(hx1)};
}

// H² has exactly five fixed points; ρ₂ = 1 − ρ₁, ρ₁ ∈ (x₀, 1/4) and ρ₁
// matches the frozen reference within 1e-10.
inline CheckResult check_h2_fixed_points() {
  const auto h = onedim::h_map();
  const auto roots = onedim::find_fixed_points(h, 2);
  if (roots.size() != 5) {
    return {"6", "h2-fixed-points", false, std::to_string(roots.size()) + " fixed points"};
  }
  const double rho1 = roots[1].points[0];
  const double rho2 = roots[3].points[0];
  const bool ok = std::abs(roots[0].points[0]) <= 1e-10 &&
                  std::abs(roots[2].points[0] - 0.5) <= 1e-10 &&
                  std::abs(roots[4].points[0] - 1.0) <= 1e-10 &&
                  std::abs(rho2 - (1.0 - rho1)) <= 1e-10 && rho1 > onedim::h_critical_low() &&
                  rho1 < 0.25 && std::abs(rho1 - kRho1Reference) <= 1e-10 &&
                  roots[1].period == 2 && roots[3].period == 2;
  return {"6", "h2-fixed-points", ok,
          "rho1 = " + format_double(rho1) + ", rho2 = " + format_double(rho2) +
              ", reference gap " + detail::fmt(std::abs(rho1 - kRho1Reference))};
}

// 10³ uniform starts: even iterates reach ρ₁ or ρ₂ within 1e-8 in 2000
// steps unless flagged near 1/2; flagged fraction below 1%; H swaps ρ₁, ρ₂.
inline CheckResult check_limit_cycle() {
  const auto h = onedim::h_map();
  const auto roots = onedim::genuine_orbits(onedim::find_fixed_points(h, 2), 2);
  if (roots.size() != 2) return {"7", "limit-cycle", false, "period-2 orbit not found"};
  const double rho1 = roots[0].points[0];
  const double rho2 = roots[1].points[0];
  const auto records = basin_sample(h, uniform_starts(kBasinSeed, 1000), {rho1, rho2});
  std::size_t hits = 0;
  std::size_t flagged = 0;
  std::size_t unresolved = 0;
  for (const auto& r : records) {
    if (r.outcome == BasinOutcome::kTarget) ++hits;
    if (r.outcome == BasinOutcome::kFlagged) ++flagged;
    if (r.outcome == BasinOutcome::kUnresolved) ++unresolved;
  }
  const double swap = std::max(std::abs(h(rho1) - rho2), std::abs(h(rho2) - rho1));
  const bool ok = unresolved == 0 && flagged < 10 && swap <= 1e-10;
  return {"7", "limit-cycle", ok,
          std::to_string(hits) + " reach the orbit, " + std::to_string(flagged) + " flagged, " +
              std::to_string(unresolved) + " unresolved; swap gap " + detail::fmt(swap)};
}

// G's fixed points {0, 3/4, 1}; G³(0.4) − 0.4 = −0.158 and G³(0.5) − 0.5 =
// 0.496 within 2e-3; a period-3 certificate (residual <= 1e-10, separation
// > 1e-3) satisfying the Li-Yorke chain; genuine period-k orbits, k = 1..6.
inline CheckResult check_period3() {
  const auto g = onedim::g_map();
  const auto fixed = onedim::find_fixed_points(g, 1);
  bool ok = fixed.size() == 3 && std::abs(fixed[0].points[0]) <= 1e-10 &&
            std::abs(fixed[1].points[0] - 0.75) <= 1e-10 &&
            std::abs(fixed[2].points[0] - 1.0) <= 1e-10;
  std::string detail = "fixed points " + std::to_string(fixed.size());
  const double d04 = onedim::iterate(g, 0.4, 3) - 0.4;
  const double d05 = onedim::iterate(g, 0.5, 3) - 0.5;
  ok = ok && std::abs(d04 + 0.158) <= 2e-3 && std::abs(d05 - 0.496) <= 2e-3;
  detail += "; G3(0.4)-0.4 = " + detail::fmt(d04) + ", G3(0.5)-0.5 = " + detail::fmt(d05);
  const auto cert = onedim::find_period3(g, 0.4, 0.5);
  ok = ok && cert.residual <= 1e-10 && cert.separation > 1e-3;
  detail += "; period-3 y = " + format_double(cert.points[0]) + " residual " +
            detail::fmt(cert.residual);
  const auto ly = onedim::li_yorke_from_orbit(g, cert);
  ok = ok && ly.has_value();
  detail += ly ? "; li-yorke holds at " + format_double(ly->a) : "; li-yorke fails";
  detail += "; genuine orbits k=1..6:";
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto found = onedim::genuine_orbits(onedim::find_fixed_points(g, k), k);
    double residual = 0.0;
    for (const auto& c : found) residual = std::max(residual, c.residual);
    ok = ok && !found.empty() && residual <= 1e-10;
    detail += " " + std::to_string(found.size());
  }
  return {"8", "period3-li-yorke", ok, detail};
}

// The symmetric reductions of game1 and game2 under MWU_e match H and G on
// 10³ grid points within 1e-12.
inline CheckResult check_reduction() {
  double gap_h = 0.0;
  double gap_g = 0.0;
  for (const auto& [name, closed, gap] :
       {std::tuple{"game1", &onedim::map_h, &gap_h}, std::tuple{"game2", &onedim::map_g, &gap_g}}) {
    const auto b = *find_builtin(name);
    const auto reduced = onedim::symmetric_reduction(b.game, detail::game_rates(b),
                                                     Variant::kExponential);
    for (std::size_t i = 0; i <= 1000; ++i) {
      const double x = static_cast<double>(i) / 1000.0;
      *gap = std::max(*gap, std::abs(reduced(x) - closed(x)));
    }
  }
  return {"9", "reduction", gap_h <= 1e-12 && gap_g <= 1e-12,
          "max gap H " + detail::fmt(gap_h) + ", G " + detail::fmt(gap_g)};
}

// game1 from x = y = 0.3: MWU_e cycles with period 2, MWU_ℓ converges to
// 1/2, both within 5000 iterations.
inline CheckResult check_contrast() {
  const auto b = *find_builtin("game1");
  const auto p0 = MixedProfile::first_strategy_weight(b.game, 0.3);
  const RunOptions options{5000, 1e-12, 1e-10, 1e-6, 64};
  const auto e = run(b.game, p0, detail::game_rates(b), Variant::kExponential, options);
  const auto l = run(b.game, p0, detail::game_rates(b), Variant::kLinear, options);
  const bool ok = e.termination == Termination::kCycleDetected && e.period == 2 &&
                  l.termination == Termination::kConverged &&
                  std::abs(l.last()(0, 0) - 0.5) <= 1e-8;
  return {"10", "contrast", ok,
          "exp: " + to_string(e.termination) + " period " + std::to_string(e.period) + " after " +
              std::to_string(e.steps.size()) + " steps; linear: " + to_string(l.termination) +
              " at " + format_double(l.last()(0, 0)) + " after " +
              std::to_string(l.steps.size()) + " steps"};
}

// Starts 0.3 and 0.3 + 1e-6 under game2's reduced map separate by more
// than 0.1 within 10⁴ steps.
inline CheckResult check_scrambled_pair() {
  const auto b = *find_builtin("game2");
  const auto reduced = onedim::symmetric_reduction(b.game, detail::game_rates(b),
                                                   Variant::kExponential);
  const auto gaps = onedim::scrambled_pair_evidence(reduced, 0.3, 0.3 + 1e-6, 10000);
  return {"S", "scrambled-pair", gaps.max_gap > 0.1,
          "min gap " + detail::fmt(gaps.min_gap) + ", max gap " + detail::fmt(gaps.max_gap)};
}

struct NamedCheck {
  std::string id;
  std::function<CheckResult()> run;
};

inline std::vector<NamedCheck> all_checks() {
  return {{"1", check_lyapunov},      {"2", check_baum_eagon},   {"3", check_q_coefficients},
          {"4", check_nash},          {"5", check_h_anchors},    {"6", check_h2_fixed_points},
          {"7", check_limit_cycle},   {"8", check_period3},      {"9", check_reduction},
          {"10", check_contrast},     {"S", check_scrambled_pair}};
}

// Runs a check, turning a library exception into a failed result.
inline CheckResult run_check(const NamedCheck& check) {
  try {
    return check.run();
  } catch (const std::exception& e) {
    return {check.id, "exception", false, e.what()};
  }
}

inline std::string result_line(const CheckResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + r.id + "] " + r.name + ": " + r.detail;
}

}  // namespace mwu_lab::acceptance

#endif  // MWU_LAB_ACCEPTANCE_HPP
