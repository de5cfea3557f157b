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

#ifndef MWU_LAB_TESTS_ORACLES_HPP
#define MWU_LAB_TESTS_ORACLES_HPP

// Reference computations that share no code path with the library: pure
// profile enumeration instead of load convolution, textbook update formulas,
// central differences, and bisection in long double.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "mwu_lab/game.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

// Calls fn(choice, weight) for every pure profile, weight = Π_i p_i(s_i).
// Agent `skip` (if < N) is held at strategy `fixed`.
inline void for_each_profile(const mwu_lab::CongestionGame& game, const Rows& p,
                             const std::function<void(const std::vector<std::size_t>&, double)>& fn,
                             std::size_t skip = static_cast<std::size_t>(-1),
                             std::size_t fixed = 0) {
  const std::size_t n = game.num_agents();
  std::vector<std::size_t> choice(n, 0);
  if (skip < n) choice[skip] = fixed;
  while (true) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != skip) w *= p[i][choice[i]];
    }
    fn(choice, w);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (i == skip) continue;
      if (++choice[i] < game.num_strategies(i)) break;
      choice[i] = 0;
    }
    if (i == n) return;
  }
}

inline std::vector<std::size_t> edge_loads(const mwu_lab::CongestionGame& game,
                                           const std::vector<std::size_t>& choice) {
  std::vector<std::size_t> load(game.num_edges(), 0);
  for (std::size_t i = 0; i < choice.size(); ++i) {
    for (auto e : game.strategies(i)[choice[i]]) ++load[e];
  }
  return load;
}

// Φ(s) = Σ_e Σ_{k=1}^{ℓ_e} c_e(k), summed directly from the cost table.
inline double rosenthal(const mwu_lab::CongestionGame& game,
                        const std::vector<std::size_t>& choice) {
  const auto load = edge_loads(game, choice);
  double total = 0.0;
  for (std::size_t e = 0; e < game.num_edges(); ++e) {
    for (std::size_t k = 1; k <= load[e]; ++k) total += game.cost_tables()[e][k - 1];
  }
  return total;
}

inline double agent_cost(const mwu_lab::CongestionGame& game,
                         const std::vector<std::size_t>& choice, std::size_t agent) {
  const auto load = edge_loads(game, choice);
  double total = 0.0;
  for (auto e : game.strategies(agent)[choice[agent]]) total += game.cost_tables()[e][load[e] - 1];
  return total;
}

inline double expected_potential(const mwu_lab::CongestionGame& game, const Rows& p) {
  double total = 0.0;
  for_each_profile(game, p, [&](const auto& s, double w) { total += w * rosenthal(game, s); });
  return total;
}

inline double strategy_cost(const mwu_lab::CongestionGame& game, const Rows& p,
                            std::size_t agent, std::size_t strategy) {
  double total = 0.0;
  for_each_profile(
      game, p, [&](const auto& s, double w) { total += w * agent_cost(game, s, agent); }, agent,
      strategy);
  return total;
}

inline Rows linear_step(const mwu_lab::CongestionGame& game, const Rows& p,
                        const std::vector<double>& eps) {
  Rows next = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double mean = 0.0;
    for (std::size_t g = 0; g < p[i].size(); ++g) mean += p[i][g] * strategy_cost(game, p, i, g);
    for (std::size_t g = 0; g < p[i].size(); ++g) {
      next[i][g] = p[i][g] * (1.0 - eps[i] * strategy_cost(game, p, i, g)) / (1.0 - eps[i] * mean);
    }
  }
  return next;
}

inline Rows exponential_step(const mwu_lab::CongestionGame& game, const Rows& p,
                             const std::vector<double>& eps) {
  Rows next = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double total = 0.0;
    for (std::size_t g = 0; g < p[i].size(); ++g) {
      next[i][g] = p[i][g] * std::pow(1.0 - eps[i], strategy_cost(game, p, i, g));
      total += next[i][g];
    }
    for (auto& v : next[i]) v /= total;
  }
  return next;
}

// Central difference of f along coordinate `var` of a flat vector.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x, std::size_t var, double h = 1e-6) {
  const double x0 = x[var];
  x[var] = x0 + h;
  const double up = f(x);
  x[var] = x0 - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

// Plain bisection in long double on a sign change of f in [a, b].
inline long double bisect(const std::function<long double(long double)>& f, long double a,
                          long double b) {
  long double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const long double m = (a + b) / 2;
    const long double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return (a + b) / 2;
}

// ρ₁ via the reduced equation x = e^{5x − 2.5}(1 − x), which a point of
// period two of H satisfies together with its image 1 − x.
inline double rho1() {
  const long double x0 = (5.0L - std::sqrt(15.0L)) / 10.0L;
  return static_cast<double>(
      bisect([](long double x) { return x - std::exp(5.0L * x - 2.5L) * (1.0L - x); }, x0, 0.25L));
}

// H evaluated directly from its defining formula in long double.
inline double h(double x) {
  const long double X = x;
  const long double a = X * std::exp(-5.0L * (X + 1.0L));
  const long double b = (1.0L - X) * std::exp(-5.0L * (2.0L - X));
  return static_cast<double>(a / (a + b));
}

inline double g(double x) {
  const long double X = x;
  const long double a = X * std::exp(-10.0L * (X + 1.0L));
  const long double b = (1.0L - X) * std::exp(-14.0L * (2.0L - X));
  return static_cast<double>(a / (a + b));
}

// Frozen values, computed once with the oracles above and with 40-digit
// mpmath, then pinned.
inline constexpr double kRho1 = 0.14479410825606481;
inline constexpr double kPeriod3Point = 0.42158751523414224;
inline constexpr double kHx0 = 0.8593070288;
inline constexpr double kHx1 = 0.1406929712;
inline constexpr double kG3At04 = -0.158251;
inline constexpr double kG3At05 = 0.496676;

}  // namespace oracle

#endif  // MWU_LAB_TESTS_ORACLES_HPP
