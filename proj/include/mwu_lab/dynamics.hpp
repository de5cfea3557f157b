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

#ifndef MWU_LAB_DYNAMICS_HPP
#define MWU_LAB_DYNAMICS_HPP

// Multiplicative weights update on congestion games.
//
//   linear:       p'_iγ = p_iγ (1 − ε_i c_iγ) / (1 − ε_i ĉ_i)
//   exponential:  p'_iγ = p_iγ (1 − ε_i)^{c_iγ} / Σ_δ p_iδ (1 − ε_i)^{c_iδ}
//
// Both maps keep Δ invariant, keep zero coordinates at zero and share the
// same fixed points: profiles where every supported strategy of an agent
// costs exactly the agent's expected cost.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mwu_lab/error.hpp"
#include "mwu_lab/game.hpp"

namespace mwu_lab {

// A learning rate ε together with its complement 1 − ε.
//
// Rates such as 1 − e^{−40} round to exactly 1.0 in double precision, so the
// exponential update reads log(1 − ε) from the stored complement rather than
// from ε.
class LearningRate {
 public:
  static LearningRate from_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw InadmissibleRate("learning rate must be positive and finite");
    }
    return LearningRate(epsilon, 1.0 - epsilon, std::log1p(-epsilon));
  }

  // ε = 1 − complement, complement ∈ (0, 1).
  static LearningRate from_complement(double complement) {
    if (!(complement > 0.0 && complement < 1.0)) {
      throw InadmissibleRate("rate complement must lie in (0, 1)");
    }
    return LearningRate(1.0 - complement, complement, std::log(complement));
  }

  double epsilon() const { return epsilon_; }
  double complement() const { return complement_; }
  // log(1 − ε); NaN when ε > 1 and -inf when ε = 1.
  double log_complement() const { return log_complement_; }

  bool operator==(const LearningRate&) const = default;

 private:
  LearningRate(double eps, double complement, double log_complement)
      : epsilon_(eps), complement_(complement), log_complement_(log_complement) {}

  double epsilon_;
  double complement_;
  double log_complement_;
};

// One rate per agent.
using LearningRates = std::vector<LearningRate>;

inline LearningRates uniform_rates(const CongestionGame& game, LearningRate rate) {
  return LearningRates(game.num_agents(), rate);
}

enum class Variant { kLinear, kExponential };

inline std::string to_string(Variant v) {
  return v == Variant::kLinear ? "linear" : "exp";
}

inline void check_rate_count(const CongestionGame& game, const LearningRates& rates) {
  if (rates.size() != game.num_agents()) {
    throw InadmissibleRate("expected " + std::to_string(game.num_agents()) +
                           " rates, got " + std::to_string(rates.size()));
  }
}

// MWU_ℓ admissibility: ε_i < β̂ for every agent, i.e. ε_i · (1/β̂) < 1.
inline void check_linear_admissible(const CongestionGame& game,
                                    const LearningRates& rates) {
  check_rate_count(game, rates);
  const double bound = game.cost_bound();
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i].epsilon() * bound < 1.0)) {
      throw InadmissibleRate("agent " + std::to_string(i) + ": epsilon " +
                             std::to_string(rates[i].epsilon()) +
                             " is not below 1/" + std::to_string(bound));
    }
  }
}

// MWU_e admissibility: ε_i < 1.
inline void check_exponential_admissible(const CongestionGame& game,
                                         const LearningRates& rates) {
  check_rate_count(game, rates);
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i].complement() > 0.0) || !std::isfinite(rates[i].log_complement())) {
      throw InadmissibleRate("agent " + std::to_string(i) +
                             ": exponential variant needs epsilon < 1");
    }
  }
}

inline void check_admissible(const CongestionGame& game, const LearningRates& rates,
                             Variant variant) {
  if (variant == Variant::kLinear) {
    check_linear_admissible(game, rates);
  } else {
    check_exponential_admissible(game, rates);
  }
}

namespace detail {

constexpr double kDriftTolerance = 1e-9;

inline MixedProfile finish_step(std::vector<std::vector<double>> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double sum = 0.0;
    for (double v : rows[i]) sum += v;
    if (std::abs(sum - 1.0) >= kDriftTolerance) {
      throw NumericalDrift("agent " + std::to_string(i) + " mass drifted to " +
                           std::to_string(sum));
    }
  }
  return MixedProfile(std::move(rows));
}

}  // namespace detail

inline MixedProfile step_linear(const CongestionGame& game, const MixedProfile& p,
                                const LearningRates& rates) {
  p.check_shape(game);
  check_linear_admissible(game, rates);
  std::vector<std::vector<double>> next(game.num_agents());
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    const double eps = rates[i].epsilon();
    const auto costs = expected_strategy_costs(game, p, i);
    const auto row = p.agent(i);
    double mean = 0.0;
    for (std::size_t g = 0; g < row.size(); ++g) mean += row[g] * costs[g];
    const double denominator = 1.0 - eps * mean;
    next[i].resize(row.size());
    for (std::size_t g = 0; g < row.size(); ++g) {
      const double factor = 1.0 - eps * costs[g];
      if (!(factor > 0.0)) {
        throw InadmissibleRate("1 - eps*c <= 0 for agent " + std::to_string(i) +
                               " strategy " + std::to_string(g));
      }
      next[i][g] = row[g] * factor / denominator;
    }
  }
  return detail::finish_step(std::move(next));
}

inline MixedProfile step_exponential(const CongestionGame& game,
                                     const MixedProfile& p,
                                     const LearningRates& rates) {
  p.check_shape(game);
  check_exponential_admissible(game, rates);
  std::vector<std::vector<double>> next(game.num_agents());
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    const double log_keep = rates[i].log_complement();
    const auto costs = expected_strategy_costs(game, p, i);
    const auto row = p.agent(i);
    // log of p_iγ (1-ε)^{c_iγ}, normalized against the largest term.
    std::vector<double> log_weight(row.size(), -std::numeric_limits<double>::infinity());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < row.size(); ++g) {
      if (row[g] > 0.0) {
        log_weight[g] = std::log(row[g]) + costs[g] * log_keep;
        top = std::max(top, log_weight[g]);
      }
    }
    next[i].assign(row.size(), 0.0);
    double total = 0.0;
    for (std::size_t g = 0; g < row.size(); ++g) {
      if (row[g] > 0.0) {
        next[i][g] = std::exp(log_weight[g] - top);
        total += next[i][g];
      }
    }
    for (double& v : next[i]) v /= total;
  }
  return detail::finish_step(std::move(next));
}

inline MixedProfile step(const CongestionGame& game, const MixedProfile& p,
                         const LearningRates& rates, Variant variant) {
  return variant == Variant::kLinear ? step_linear(game, p, rates)
                                     : step_exponential(game, p, rates);
}

// True iff every supported strategy (p > support_tol) of every agent costs
// ĉ_i within `tol`.
inline bool is_fixed_point(const CongestionGame& game, const MixedProfile& p,
                           double tol = 1e-9, double support_tol = 1e-14) {
  p.check_shape(game);
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    const auto costs = expected_strategy_costs(game, p, i);
    const auto row = p.agent(i);
    double mean = 0.0;
    for (std::size_t g = 0; g < row.size(); ++g) mean += row[g] * costs[g];
    for (std::size_t g = 0; g < row.size(); ++g) {
      if (row[g] > support_tol && std::abs(costs[g] - mean) > tol) return false;
    }
  }
  return true;
}

enum class Termination { kConverged, kMaxIters, kCycleDetected };

inline std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kMaxIters: return "max_iters";
    case Termination::kCycleDetected: return "cycle_detected";
  }
  return "unknown";
}

struct RunOptions {
  std::size_t max_iters = 10000;
  double fp_tol = 1e-12;
  double cycle_tol = 1e-10;
  // Cycle points must be pairwise further apart than this.
  double cycle_separation = 1e-6;
  std::size_t window = 64;
};

struct TrajectoryStep {
  MixedProfile profile;
  double psi = 0.0;
  std::optional<double> q;
  double step_norm = 0.0;
};

struct Trajectory {
  MixedProfile initial;
  double initial_psi = 0.0;
  std::optional<double> initial_q;
  std::vector<TrajectoryStep> steps;
  Termination termination = Termination::kMaxIters;
  std::size_t period = 0;  // set when termination == kCycleDetected

  const MixedProfile& last() const {
    return steps.empty() ? initial : steps.back().profile;
  }
};

// Q = Σ_i 1/ε_i − Ψ on Δ.
inline double q_value(const LearningRates& rates, double psi) {
  double total = 0.0;
  for (const auto& r : rates) total += 1.0 / r.epsilon();
  return total - psi;
}

inline Trajectory run(const CongestionGame& game, const MixedProfile& p0,
                      const LearningRates& rates, Variant variant,
                      const RunOptions& options = {}) {
  if (!(options.fp_tol > 0.0)) throw InvalidConfig("fp_tol must be positive");
  if (options.window < 2) throw InvalidConfig("cycle window must be at least 2");
  p0.check_shape(game);
  check_admissible(game, rates, variant);

  const bool linear = variant == Variant::kLinear;
  Trajectory traj{p0, expected_potential(game, p0), std::nullopt, {}, Termination::kMaxIters, 0};
  if (linear) traj.initial_q = q_value(rates, traj.initial_psi);

  std::deque<MixedProfile> history{p0};
  for (std::size_t t = 0; t < options.max_iters; ++t) {
    const MixedProfile& current = history.back();
    MixedProfile next = step(game, current, rates, variant);
    const double norm = max_abs_difference(next, current);
    const double psi = expected_potential(game, next);
    traj.steps.push_back({next, psi, linear ? std::optional(q_value(rates, psi)) : std::nullopt, norm});
    if (norm < options.fp_tol) {
      traj.termination = Termination::kConverged;
      return traj;
    }
    // Smallest lag d >= 2 whose iterate p(t+1-d) is revisited.
    for (std::size_t d = 2; d <= history.size(); ++d) {
      const MixedProfile& earlier = history[history.size() - d];
      if (max_abs_difference(next, earlier) >= options.cycle_tol) continue;
      double separation = std::numeric_limits<double>::infinity();
      const std::size_t first = history.size() - d + 1;
      for (std::size_t a = first; a < history.size(); ++a) {
        separation = std::min(separation, max_abs_difference(history[a], next));
        for (std::size_t b = a + 1; b < history.size(); ++b) {
          separation = std::min(separation, max_abs_difference(history[a], history[b]));
        }
      }
      if (separation > options.cycle_separation) {
        traj.termination = Termination::kCycleDetected;
        traj.period = d;
        return traj;
      }
      break;
    }
    history.push_back(std::move(next));
    if (history.size() > options.window) history.pop_front();
  }
  return traj;
}

}  // namespace mwu_lab

#endif  // MWU_LAB_DYNAMICS_HPP
