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

#ifndef MWU_LAB_BAUM_EAGON_HPP
#define MWU_LAB_BAUM_EAGON_HPP

// The polynomial Q whose Baum-Eagon map is the MWU_ℓ step.
//
// Write u_je = Σ_{γ∋e} p_jγ and σ_j = Σ_γ p_jγ. The expected potential has
// the Möbius form
//
//   Ψ_M(p) = Σ_e Σ_{U ≠ ∅} m_e(|U|) Π_{j∈U} u_je,   m_e(k) = Δ^k F_e(0),
//
// which agrees with Ψ on Δ and satisfies ∂Ψ_M/∂p_iγ = c_iγ exactly. Then
//
//   Q = Σ_i σ_i / ε_i − Ψ_M + Σ_{|T|≥2} K_T Π_{j∈T} (σ_j − 1)
//
// has ∂Q/∂p_iγ = 1/ε_i − c_iγ on Δ, because every correction term vanishes
// to second order there, and Q = Σ_i 1/ε_i − Ψ on Δ. The weights K_T are
// the smallest that make every monomial of degree >= 2 nonnegative; the
// linear coefficients are then nonnegative iff 1/ε_i >= q_rate_bounds()[i].
//
// Expanding in p gives one monomial Π_{j∈U} p_{j s_j} per agent subset U and
// choice s_U, so Q has Π_i (|S_i| + 1) candidate monomials.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "mwu_lab/dynamics.hpp"
#include "mwu_lab/error.hpp"
#include "mwu_lab/game.hpp"
#include "mwu_lab/polynomial.hpp"

namespace mwu_lab {

struct QOptions {
  std::size_t max_monomials = 1'000'000;
  double negative_tolerance = SimplexPolynomial::kNegativeTolerance;
};

namespace detail {

// Per agent subset (bitmask) and per joint choice s_U (mixed radix, agents
// in increasing order), the value Σ_{e ∈ ∩_{j∈U} s_j} m_e(|U|).
struct MobiusTable {
  std::vector<std::vector<double>> value;  // indexed by mask
  std::vector<double> lift;                // g(U) = max(0, max_s value), |U| >= 2
};

inline std::vector<std::vector<double>> finite_differences(const CongestionGame& game) {
  // m[e][k] = Δ^k F_e(0), k = 0..N.
  const std::size_t n = game.num_agents();
  std::vector<std::vector<double>> m(game.num_edges());
  for (std::size_t e = 0; e < game.num_edges(); ++e) {
    std::vector<double> row(n + 1);
    for (std::size_t k = 0; k <= n; ++k) row[k] = game.cumulative_cost(e, k);
    m[e].push_back(row[0]);
    for (std::size_t order = 1; order <= n; ++order) {
      for (std::size_t k = 0; k + order <= n; ++k) row[k] = row[k + 1] - row[k];
      m[e].push_back(row[0]);
    }
  }
  return m;
}

inline std::size_t monomial_count(const CongestionGame& game, std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    const std::size_t factor = game.num_strategies(i) + 1;
    if (count > cap / factor) {
      throw CapacityExceeded("Q would need more than " + std::to_string(cap) +
                             " monomials");
    }
    count *= factor;
  }
  return count;
}

inline MobiusTable mobius_table(const CongestionGame& game, const QOptions& options) {
  const std::size_t n = game.num_agents();
  if (n >= 31) throw CapacityExceeded("too many agents for Q expansion");
  monomial_count(game, options.max_monomials);
  const auto m = finite_differences(game);
  const std::size_t masks = std::size_t{1} << n;

  MobiusTable table;
  table.value.resize(masks);
  table.lift.assign(masks, 0.0);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(i);
    }
    std::size_t combos = 1;
    for (auto i : members) combos *= game.num_strategies(i);
    auto& values = table.value[mask];
    values.resize(combos);
    std::vector<std::size_t> digit(members.size(), 0);
    for (std::size_t c = 0; c < combos; ++c) {
      Strategy common = game.strategies(members[0])[digit[0]];
      for (std::size_t k = 1; k < members.size() && !common.empty(); ++k) {
        const auto& s = game.strategies(members[k])[digit[k]];
        Strategy next;
        std::set_intersection(common.begin(), common.end(), s.begin(), s.end(),
                              std::back_inserter(next));
        common = std::move(next);
      }
      double v = 0.0;
      for (auto e : common) v += m[e][members.size()];
      values[c] = v;
      // Advance the last agent fastest.
      for (std::size_t k = members.size(); k-- > 0;) {
        if (++digit[k] < game.num_strategies(members[k])) break;
        digit[k] = 0;
      }
    }
    if (members.size() >= 2) {
      table.lift[mask] = std::max(0.0, *std::max_element(values.begin(), values.end()));
    }
  }
  return table;
}

}  // namespace detail

// Per agent, the bound B_i such that Q has nonnegative coefficients iff
// 1/ε_i >= B_i for every agent. For the two-bin games this equals 1/β̂; in
// general it can be larger.
inline std::vector<double> q_rate_bounds(const CongestionGame& game,
                                         const QOptions& options = {}) {
  const auto table = detail::mobius_table(game, options);
  const std::size_t n = game.num_agents();
  std::vector<double> bounds(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& singles = table.value[std::size_t{1} << i];
    double lifted = 0.0;
    for (std::size_t mask = 0; mask < table.lift.size(); ++mask) {
      if (mask & (std::size_t{1} << i)) lifted += table.lift[mask];
    }
    bounds[i] = *std::max_element(singles.begin(), singles.end()) + lifted;
  }
  return bounds;
}

inline SimplexPolynomial build_q(const CongestionGame& game, const LearningRates& rates,
                                 const QOptions& options = {}) {
  check_linear_admissible(game, rates);
  const auto table = detail::mobius_table(game, options);
  const std::size_t n = game.num_agents();

  std::vector<std::size_t> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back(game.num_strategies(i));
  std::vector<std::size_t> offsets(n, 0);
  for (std::size_t i = 1; i < n; ++i) offsets[i] = offsets[i - 1] + blocks[i - 1];

  std::vector<double> lifted(n, 0.0);
  double constant = 0.0;
  for (std::size_t mask = 0; mask < table.lift.size(); ++mask) {
    const auto size = static_cast<double>(std::popcount(mask));
    constant += (size - 1.0) * table.lift[mask];
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) lifted[i] += table.lift[mask];
    }
  }

  std::vector<Monomial> terms;
  terms.push_back({constant, {}});
  for (std::size_t mask = 1; mask < table.value.size(); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(i);
    }
    std::vector<std::size_t> digit(members.size(), 0);
    for (double value : table.value[mask]) {
      double coefficient;
      if (members.size() == 1) {
        coefficient = 1.0 / rates[members[0]].epsilon() - lifted[members[0]] - value;
      } else {
        coefficient = table.lift[mask] - value;
      }
      if (coefficient < -options.negative_tolerance) {
        throw NegativeCoefficient(
            "coefficient " + std::to_string(coefficient) + " on a degree-" +
            std::to_string(members.size()) + " monomial; rates must satisfy " +
            "1/eps_i >= q_rate_bounds(game)[i]");
      }
      Monomial term{std::max(coefficient, 0.0), {}};
      for (std::size_t k = 0; k < members.size(); ++k) {
        term.powers.push_back(
            {static_cast<std::uint32_t>(offsets[members[k]] + digit[k]), 1});
      }
      terms.push_back(std::move(term));
      for (std::size_t k = members.size(); k-- > 0;) {
        if (++digit[k] < game.num_strategies(members[k])) break;
        digit[k] = 0;
      }
    }
  }
  return SimplexPolynomial(std::move(blocks), std::move(terms), options.negative_tolerance);
}

}  // namespace mwu_lab

#endif  // MWU_LAB_BAUM_EAGON_HPP
