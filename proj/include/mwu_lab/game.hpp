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

#ifndef MWU_LAB_GAME_HPP
#define MWU_LAB_GAME_HPP

// Atomic congestion games with tabulated edge costs.
//
// A game has N agents and a set of edges. Agent i picks one strategy out of
// S_i, each strategy being a nonempty subset of edges. Edge e costs c_e(k)
// when k agents use it; only loads 1..N are reachable, so each cost table
// holds exactly N values.
//
// Mixed profiles are evaluated exactly: agents randomize independently, so
// the load on an edge is a sum of independent Bernoulli variables and its
// distribution is obtained by convolving agents one at a time.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mwu_lab/error.hpp"

namespace mwu_lab {

// Edge indices used by one strategy, sorted and unique.
using Strategy = std::vector<std::size_t>;

class CongestionGame {
 public:
  // Validates every structural invariant; throws InvalidGame.
  // `costs[e][k-1]` is the cost of edge e under load k.
  CongestionGame(std::size_t n_agents, std::vector<std::string> edges,
                 std::vector<std::vector<Strategy>> strategies,
                 std::vector<std::vector<double>> costs)
      : n_agents_(n_agents),
        edges_(std::move(edges)),
        strategies_(std::move(strategies)),
        costs_(std::move(costs)) {
    if (n_agents_ == 0) throw InvalidGame("n_agents must be positive");
    if (edges_.empty()) throw InvalidGame("at least one edge is required");
    if (strategies_.size() != n_agents_) {
      throw InvalidGame("strategies: expected one list per agent (" +
                        std::to_string(n_agents_) + "), got " +
                        std::to_string(strategies_.size()));
    }
    for (std::size_t i = 0; i < n_agents_; ++i) {
      if (strategies_[i].empty()) {
        throw InvalidGame("strategies[" + std::to_string(i) + "] is empty");
      }
      for (std::size_t g = 0; g < strategies_[i].size(); ++g) {
        auto& s = strategies_[i][g];
        const std::string where =
            "strategies[" + std::to_string(i) + "][" + std::to_string(g) + "]";
        if (s.empty()) throw InvalidGame(where + " uses no edge");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
          throw InvalidGame(where + " repeats an edge");
        }
        if (s.back() >= edges_.size()) {
          throw InvalidGame(where + " references undeclared edge index " +
                            std::to_string(s.back()));
        }
      }
    }
    if (costs_.size() != edges_.size()) {
      throw InvalidGame("costs: expected a table per edge");
    }
    cumulative_.resize(costs_.size());
    for (std::size_t e = 0; e < costs_.size(); ++e) {
      const auto& table = costs_[e];
      if (table.size() != n_agents_) {
        throw InvalidGame("costs[" + edges_[e] + "]: expected " +
                          std::to_string(n_agents_) + " entries, got " +
                          std::to_string(table.size()));
      }
      cumulative_[e].assign(n_agents_ + 1, 0.0);
      for (std::size_t k = 0; k < table.size(); ++k) {
        if (!std::isfinite(table[k]) || table[k] < 0.0) {
          throw InvalidGame("costs[" + edges_[e] + "][" + std::to_string(k) +
                            "] must be finite and nonnegative");
        }
        cumulative_[e][k + 1] = cumulative_[e][k] + table[k];
      }
    }
  }

  std::size_t num_agents() const { return n_agents_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<std::string>& edge_names() const { return edges_; }
  const std::vector<std::vector<Strategy>>& strategies() const {
    return strategies_;
  }
  const std::vector<Strategy>& strategies(std::size_t agent) const {
    return strategies_.at(agent);
  }
  std::size_t num_strategies(std::size_t agent) const {
    return strategies_.at(agent).size();
  }
  const std::vector<std::vector<double>>& cost_tables() const { return costs_; }

  // c_e(load), load in 1..N.
  double cost(std::size_t edge, std::size_t load) const {
    return costs_[edge][load - 1];
  }
  // F_e(load) = c_e(1) + ... + c_e(load); F_e(0) = 0.
  double cumulative_cost(std::size_t edge, std::size_t load) const {
    return cumulative_[edge][load];
  }

  // 1/β̂ = max_i max_{γ∈S_i} Σ_{e∈γ} c_e(N). Every expected strategy cost
  // c_iγ is bounded by it, so it over-approximates the supremum 1/β.
  double cost_bound() const {
    double bound = 0.0;
    for (const auto& agent : strategies_) {
      for (const auto& s : agent) {
        double total = 0.0;
        for (auto e : s) total += cost(e, n_agents_);
        bound = std::max(bound, total);
      }
    }
    return bound;
  }

  bool operator==(const CongestionGame&) const = default;

 private:
  std::size_t n_agents_;
  std::vector<std::string> edges_;
  std::vector<std::vector<Strategy>> strategies_;
  std::vector<std::vector<double>> costs_;
  std::vector<std::vector<double>> cumulative_;
};

// One strategy index per agent.
struct PureProfile {
  std::vector<std::size_t> choice;
};

inline void validate(const CongestionGame& game, const PureProfile& s) {
  if (s.choice.size() != game.num_agents()) {
    throw IndexOutOfRange("pure profile has " + std::to_string(s.choice.size()) +
                          " entries for " + std::to_string(game.num_agents()) +
                          " agents");
  }
  for (std::size_t i = 0; i < s.choice.size(); ++i) {
    if (s.choice[i] >= game.num_strategies(i)) {
      throw IndexOutOfRange("agent " + std::to_string(i) + " strategy " +
                            std::to_string(s.choice[i]) + " out of range");
    }
  }
}

// A point of Δ: one probability vector per agent.
class MixedProfile {
 public:
  static constexpr double kSumTolerance = 1e-9;

  MixedProfile() = default;

  // Entries must be nonnegative and each agent's row must sum to 1 within
  // kSumTolerance; rows are renormalized exactly afterwards.
  explicit MixedProfile(std::vector<std::vector<double>> probs)
      : probs_(std::move(probs)) {
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      auto& row = probs_[i];
      if (row.empty()) {
        throw InvalidProfile("agent " + std::to_string(i) + " has no strategies");
      }
      double sum = 0.0;
      for (double v : row) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
          throw InvalidProfile("agent " + std::to_string(i) +
                               " has a negative or non-finite probability");
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kSumTolerance) {
        throw InvalidProfile("agent " + std::to_string(i) +
                             " probabilities sum to " + std::to_string(sum));
      }
      for (double& v : row) v /= sum;
    }
  }

  MixedProfile(const CongestionGame& game, std::vector<std::vector<double>> probs)
      : MixedProfile(std::move(probs)) {
    check_shape(game);
  }

  static MixedProfile uniform(const CongestionGame& game) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < game.num_agents(); ++i) {
      const auto k = game.num_strategies(i);
      rows.emplace_back(k, 1.0 / static_cast<double>(k));
    }
    return MixedProfile(std::move(rows));
  }

  static MixedProfile pure(const CongestionGame& game, const PureProfile& s) {
    validate(game, s);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < game.num_agents(); ++i) {
      rows.emplace_back(game.num_strategies(i), 0.0);
      rows.back()[s.choice[i]] = 1.0;
    }
    return MixedProfile(std::move(rows));
  }

  // Every agent puts `first` on its first strategy and spreads the rest
  // evenly. Single-strategy agents play it with probability one.
  static MixedProfile first_strategy_weight(const CongestionGame& game,
                                            double first) {
    if (!(first >= 0.0 && first <= 1.0)) {
      throw InvalidProfile("start weight must lie in [0, 1]");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < game.num_agents(); ++i) {
      const auto k = game.num_strategies(i);
      if (k == 1) {
        rows.push_back({1.0});
        continue;
      }
      std::vector<double> row(k, (1.0 - first) / static_cast<double>(k - 1));
      row[0] = first;
      rows.push_back(std::move(row));
    }
    return MixedProfile(std::move(rows));
  }

  void check_shape(const CongestionGame& game) const {
    if (probs_.size() != game.num_agents()) {
      throw InvalidProfile("profile has " + std::to_string(probs_.size()) +
                           " agents, game has " +
                           std::to_string(game.num_agents()));
    }
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (probs_[i].size() != game.num_strategies(i)) {
        throw InvalidProfile("agent " + std::to_string(i) + " has " +
                             std::to_string(probs_[i].size()) +
                             " probabilities for " +
                             std::to_string(game.num_strategies(i)) +
                             " strategies");
      }
    }
  }

  std::size_t num_agents() const { return probs_.size(); }
  std::span<const double> agent(std::size_t i) const { return probs_.at(i); }
  double operator()(std::size_t i, std::size_t g) const { return probs_[i][g]; }
  const std::vector<std::vector<double>>& blocks() const { return probs_; }

  bool operator==(const MixedProfile&) const = default;

 private:
  std::vector<std::vector<double>> probs_;
};

// ‖a − b‖∞ over all coordinates.
inline double max_abs_difference(const MixedProfile& a, const MixedProfile& b) {
  if (a.num_agents() != b.num_agents()) {
    throw DimensionMismatch("profiles have different agent counts");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.num_agents(); ++i) {
    auto x = a.agent(i);
    auto y = b.agent(i);
    if (x.size() != y.size()) {
      throw DimensionMismatch("profiles have different strategy counts");
    }
    for (std::size_t g = 0; g < x.size(); ++g) d = std::max(d, std::abs(x[g] - y[g]));
  }
  return d;
}

// ℓ_e(s) for every edge.
inline std::vector<std::size_t> loads(const CongestionGame& game,
                                      const PureProfile& s) {
  validate(game, s);
  std::vector<std::size_t> load(game.num_edges(), 0);
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    for (auto e : game.strategies(i)[s.choice[i]]) ++load[e];
  }
  return load;
}

inline double pure_cost(const CongestionGame& game, const PureProfile& s,
                        std::size_t agent) {
  if (agent >= game.num_agents()) {
    throw IndexOutOfRange("agent " + std::to_string(agent) + " out of range");
  }
  const auto load = loads(game, s);
  double total = 0.0;
  for (auto e : game.strategies(agent)[s.choice[agent]]) {
    total += game.cost(e, load[e]);
  }
  return total;
}

// Rosenthal potential Φ(s) = Σ_e F_e(ℓ_e(s)).
inline double potential(const CongestionGame& game, const PureProfile& s) {
  const auto load = loads(game, s);
  double total = 0.0;
  for (std::size_t e = 0; e < game.num_edges(); ++e) {
    total += game.cumulative_cost(e, load[e]);
  }
  return total;
}

// Per edge, the distribution of the number of users over loads 0..N.
struct LoadDistribution {
  std::vector<std::vector<double>> per_edge;
};

// q_je = Σ_{γ∋e} p_jγ for each edge, clamped to [0, 1].
inline std::vector<double> edge_usage(const CongestionGame& game,
                                      const MixedProfile& p, std::size_t agent) {
  std::vector<double> q(game.num_edges(), 0.0);
  const auto& strategies = game.strategies(agent);
  for (std::size_t g = 0; g < strategies.size(); ++g) {
    for (auto e : strategies[g]) q[e] += p(agent, g);
  }
  for (double& v : q) v = std::clamp(v, 0.0, 1.0);
  return q;
}

inline LoadDistribution load_distributions(
    const CongestionGame& game, const MixedProfile& p,
    std::optional<std::size_t> exclude = std::nullopt) {
  p.check_shape(game);
  if (exclude && *exclude >= game.num_agents()) {
    throw IndexOutOfRange("excluded agent out of range");
  }
  const std::size_t n = game.num_agents();
  LoadDistribution out;
  out.per_edge.assign(game.num_edges(), std::vector<double>(n + 1, 0.0));
  for (auto& dist : out.per_edge) dist[0] = 1.0;
  std::size_t convolved = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (exclude && *exclude == j) continue;
    const auto q = edge_usage(game, p, j);
    ++convolved;
    for (std::size_t e = 0; e < game.num_edges(); ++e) {
      auto& dist = out.per_edge[e];
      for (std::size_t k = convolved; k > 0; --k) {
        dist[k] = dist[k] * (1.0 - q[e]) + dist[k - 1] * q[e];
      }
      dist[0] *= 1.0 - q[e];
    }
  }
  return out;
}

// c_iγ for every γ ∈ S_i: Σ_{e∈γ} E[c_e(1 + K_e)], K_e counting the other
// agents on e.
inline std::vector<double> expected_strategy_costs(const CongestionGame& game,
                                                   const MixedProfile& p,
                                                   std::size_t agent) {
  if (agent >= game.num_agents()) {
    throw IndexOutOfRange("agent " + std::to_string(agent) + " out of range");
  }
  const auto dist = load_distributions(game, p, agent);
  std::vector<double> edge_cost(game.num_edges(), 0.0);
  for (std::size_t e = 0; e < game.num_edges(); ++e) {
    const auto& d = dist.per_edge[e];
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 <= game.num_agents(); ++k) {
      acc += d[k] * game.cost(e, k + 1);
    }
    edge_cost[e] = acc;
  }
  std::vector<double> out;
  out.reserve(game.num_strategies(agent));
  for (const auto& s : game.strategies(agent)) {
    double total = 0.0;
    for (auto e : s) total += edge_cost[e];
    out.push_back(total);
  }
  return out;
}

inline double expected_strategy_cost(const CongestionGame& game,
                                     const MixedProfile& p, std::size_t agent,
                                     std::size_t strategy) {
  const auto costs = expected_strategy_costs(game, p, agent);
  if (strategy >= costs.size()) {
    throw IndexOutOfRange("strategy " + std::to_string(strategy) +
                          " out of range");
  }
  return costs[strategy];
}

// ĉ_i = Σ_γ p_iγ c_iγ.
inline double expected_cost(const CongestionGame& game, const MixedProfile& p,
                            std::size_t agent) {
  const auto costs = expected_strategy_costs(game, p, agent);
  const auto row = p.agent(agent);
  return std::inner_product(row.begin(), row.end(), costs.begin(), 0.0);
}

// Ψ(p) = E_{s∼p}[Φ(s)] = Σ_e E[F_e(L_e)].
inline double expected_potential(const CongestionGame& game,
                                 const MixedProfile& p) {
  const auto dist = load_distributions(game, p);
  double total = 0.0;
  for (std::size_t e = 0; e < game.num_edges(); ++e) {
    const auto& d = dist.per_edge[e];
    for (std::size_t k = 1; k < d.size(); ++k) {
      total += d[k] * game.cumulative_cost(e, k);
    }
  }
  return total;
}

// max_i max_γ (ĉ_i − c_iγ), floored at zero. Zero exactly at Nash equilibria.
inline double nash_residual(const CongestionGame& game, const MixedProfile& p) {
  double residual = 0.0;
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    const auto costs = expected_strategy_costs(game, p, i);
    const auto row = p.agent(i);
    const double mean = std::inner_product(row.begin(), row.end(), costs.begin(), 0.0);
    for (double c : costs) residual = std::max(residual, mean - c);
  }
  return residual;
}

}  // namespace mwu_lab

#endif  // MWU_LAB_GAME_HPP
