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

#ifndef MWU_LAB_ANALYSIS_HPP
#define MWU_LAB_ANALYSIS_HPP

// Experiment drivers: seeded random games, Lyapunov campaigns, learning
// rate sweeps and basin sampling for interval maps.
//
// Everything here is deterministic in its seed. Work items run on up to
// MWU_LAB_THREADS threads and results are stored by item index, so the
// thread count never changes an output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "mwu_lab/baum_eagon.hpp"
#include "mwu_lab/dynamics.hpp"
#include "mwu_lab/error.hpp"
#include "mwu_lab/game.hpp"
#include "mwu_lab/onedim.hpp"
#include "mwu_lab/report_io.hpp"

namespace mwu_lab {

// Worker count: MWU_LAB_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least one).
inline std::size_t worker_count() {
  if (const char* env = std::getenv("MWU_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// out[k] = fn(k) for k < n. The first exception thrown by any item is
// rethrown after all workers stop.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        slots[k].emplace(fn(k));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const std::size_t threads = std::min(worker_count(), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// mt19937_64 with fixed mappings to doubles and integers; the standard
// distributions are implementation-defined and would break determinism
// across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform on {lo, ..., hi}.
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Seed of the k-th item of a family rooted at `seed` (SplitMix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct GameBounds {
  std::size_t max_agents = 4;
  std::size_t max_edges = 5;
  std::size_t max_strategies = 4;
};

// Strategies are distinct nonempty edge subsets, at least two per agent
// when the edge count allows. Cost tables are sorted draws from (0, 1].
inline CongestionGame random_game(std::uint64_t seed, std::size_t n_agents, std::size_t n_edges,
                                  std::size_t max_strategies) {
  if (n_agents < 1 || n_agents > 4 || n_edges < 1 || n_edges > 5 || max_strategies < 1 ||
      max_strategies > 4) {
    throw InvalidConfig("random games need 1-4 agents, 1-5 edges, 1-4 strategies");
  }
  Rng rng(seed);
  std::vector<std::string> edges;
  for (std::size_t e = 0; e < n_edges; ++e) edges.push_back("e" + std::to_string(e + 1));
  const std::size_t subsets = (std::size_t{1} << n_edges) - 1;
  const std::size_t cap = std::min(max_strategies, subsets);
  std::vector<std::vector<Strategy>> strategies(n_agents);
  for (auto& agent : strategies) {
    const std::size_t count = rng.integer(std::min<std::size_t>(2, cap), cap);
    std::set<std::size_t> masks;
    while (masks.size() < count) masks.insert(rng.integer(1, subsets));
    for (auto mask : masks) {
      Strategy s;
      for (std::size_t e = 0; e < n_edges; ++e) {
        if (mask & (std::size_t{1} << e)) s.push_back(e);
      }
      agent.push_back(std::move(s));
    }
  }
  std::vector<std::vector<double>> costs(n_edges);
  for (auto& table : costs) {
    for (std::size_t k = 0; k < n_agents; ++k) table.push_back(rng.uniform_open_closed());
    std::sort(table.begin(), table.end());
  }
  return CongestionGame(n_agents, std::move(edges), std::move(strategies), std::move(costs));
}

// Sizes drawn uniformly from 2..max_agents, 1..max_edges, 2..max_strategies.
inline CongestionGame random_game(std::uint64_t seed, const GameBounds& bounds = {}) {
  Rng rng(seed);
  const auto n = rng.integer(std::min<std::size_t>(2, bounds.max_agents), bounds.max_agents);
  const auto m = rng.integer(1, bounds.max_edges);
  const auto s = rng.integer(std::min<std::size_t>(2, bounds.max_strategies),
                             bounds.max_strategies);
  return random_game(rng.bits(), n, m, s);
}

inline std::vector<CongestionGame> random_game_suite(std::uint64_t seed, std::size_t count,
                                                     const GameBounds& bounds = {}) {
  std::vector<CongestionGame> games;
  for (std::size_t k = 0; k < count; ++k) games.push_back(random_game(derive_seed(seed, k), bounds));
  return games;
}

// Each coordinate at least `margin`, the rest split by uniform weights.
inline MixedProfile random_interior_profile(const CongestionGame& game, Rng& rng,
                                            double margin = 0.05) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    const auto k = game.num_strategies(i);
    if (!(margin >= 0.0 && margin * static_cast<double>(k) < 1.0)) {
      throw InvalidConfig("margin must lie in [0, 1/|S_i|)");
    }
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& v : w) total += (v = rng.uniform_open_closed());
    const double free = 1.0 - margin * static_cast<double>(k);
    for (auto& v : w) v = margin + free * v / total;
    rows.push_back(std::move(w));
  }
  return MixedProfile(game, std::move(rows));
}

// Per-agent rates drawn uniformly from [lo, hi] · limit, where limit is β̂
// (linear) or 1 (exponential).
inline LearningRates random_rates(const CongestionGame& game, Rng& rng, Variant variant,
                                  double lo = 0.05, double hi = 0.95) {
  const double limit = variant == Variant::kLinear ? 1.0 / game.cost_bound() : 1.0;
  LearningRates rates;
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    rates.push_back(LearningRate::from_epsilon(rng.uniform(lo, hi) * limit));
  }
  return rates;
}

// Like random_rates for the linear variant, but also below 1/B_i so that Q
// has nonnegative coefficients.
inline LearningRates random_q_rates(const CongestionGame& game, Rng& rng, double lo = 0.05,
                                    double hi = 0.95) {
  const auto bounds = q_rate_bounds(game);
  const double beta = 1.0 / game.cost_bound();
  LearningRates rates;
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    const double limit = std::min(beta, 1.0 / bounds[i]);
    rates.push_back(LearningRate::from_epsilon(rng.uniform(lo, hi) * limit));
  }
  return rates;
}

struct ExperimentConfig {
  // Explicit games; when empty, `num_games` random games are drawn from `seed`.
  std::vector<CongestionGame> games;
  std::uint64_t seed = 1;
  std::size_t num_games = 100;
  GameBounds bounds;
  Variant variant = Variant::kLinear;
  // One rate for every agent; when unset each agent draws an admissible rate.
  std::optional<LearningRate> rate;
  // Starts per game; when set, `start` replaces the random interior starts.
  std::size_t starts = 5;
  std::optional<double> start;
  double margin = 0.05;
  RunOptions run{500, 1e-12, 1e-10, 1e-6, 64};
  // A step must lower Ψ when its L∞ norm exceeds step_threshold; increases
  // up to `slack` are attributed to rounding.
  double step_threshold = 1e-12;
  double slack = 1e-13;

  void validate() const {
    if (bounds.max_agents < 1 || bounds.max_agents > 4 || bounds.max_edges < 1 ||
        bounds.max_edges > 5 || bounds.max_strategies < 1 || bounds.max_strategies > 4) {
      throw InvalidConfig("size bounds exceed 4 agents / 5 edges / 4 strategies");
    }
    if (games.empty() && num_games == 0) throw InvalidConfig("no games");
    if (starts == 0) throw InvalidConfig("need at least one start");
    if (!(margin > 0.0 && margin < 1.0 / static_cast<double>(bounds.max_strategies))) {
      throw InvalidConfig("margin must lie in (0, 1/max|S_i|)");
    }
  }
};

struct LyapunovRecord {
  std::size_t game = 0;
  std::size_t start = 0;
  std::size_t steps = 0;  // steps whose norm exceeded the threshold
  std::size_t violations = 0;
  double max_violation = 0.0;  // largest Ψ increase seen on a counted step
  Termination termination = Termination::kMaxIters;
  double nash_residual = 0.0;
};

struct LyapunovReport {
  Variant variant = Variant::kLinear;
  std::vector<LyapunovRecord> records;

  std::size_t total_violations() const {
    std::size_t v = 0;
    for (const auto& r : records) v += r.violations;
    return v;
  }
  double max_violation() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.max_violation);
    return m;
  }
};

// Counts steps where Ψ fails to decrease. The exponential variant is
// accepted too; Ψ is not a Lyapunov function for it, so violations are
// expected there.
inline LyapunovRecord check_trajectory(const Trajectory& traj, double step_threshold,
                                       double slack) {
  LyapunovRecord r;
  r.termination = traj.termination;
  double prev = traj.initial_psi;
  for (const auto& s : traj.steps) {
    if (s.step_norm > step_threshold) {
      ++r.steps;
      const double increase = s.psi - prev;
      if (increase > slack) {
        ++r.violations;
        r.max_violation = std::max(r.max_violation, increase);
      }
    }
    prev = s.psi;
  }
  return r;
}

inline std::vector<CongestionGame> experiment_games(const ExperimentConfig& config) {
  return config.games.empty() ? random_game_suite(config.seed, config.num_games, config.bounds)
                              : config.games;
}

inline LyapunovReport verify_lyapunov(const ExperimentConfig& config) {
  config.validate();
  const auto games = experiment_games(config);
  const std::size_t per_game = config.start ? 1 : config.starts;
  auto records = parallel_map(games.size() * per_game, [&](std::size_t k) {
    const std::size_t g = k / per_game;
    const std::size_t s = k % per_game;
    const auto& game = games[g];
    Rng rng(derive_seed(derive_seed(config.seed, g), s));
    const auto rates = config.rate ? uniform_rates(game, *config.rate)
                                   : random_rates(game, rng, config.variant);
    const auto p0 = config.start ? MixedProfile::first_strategy_weight(game, *config.start)
                                 : random_interior_profile(game, rng, config.margin);
    const auto traj = run(game, p0, rates, config.variant, config.run);
    auto record = check_trajectory(traj, config.step_threshold, config.slack);
    record.game = g;
    record.start = s;
    record.nash_residual = nash_residual(game, traj.last());
    return record;
  });
  return {config.variant, std::move(records)};
}

inline nlohmann::json lyapunov_report_json(const LyapunovReport& report) {
  nlohmann::json j;
  j["variant"] = to_string(report.variant);
  j["trajectories"] = report.records.size();
  j["total_violations"] = report.total_violations();
  j["max_violation"] = report.max_violation();
  auto rows = nlohmann::json::array();
  for (const auto& r : report.records) {
    rows.push_back({{"game", r.game},
                    {"start", r.start},
                    {"steps", r.steps},
                    {"violations", r.violations},
                    {"max_violation", r.max_violation},
                    {"termination", to_string(r.termination)},
                    {"nash_residual", r.nash_residual}});
  }
  j["records"] = std::move(rows);
  return j;
}

// Outcome of one (rate, start) pair in a sweep.
struct SweepOutcome {
  LearningRate rate = LearningRate::from_epsilon(0.5);
  std::size_t start = 0;
  std::string label;  // "converged", "periodic-k" or "non-classified"
  std::size_t period = 0;
  // p[0][0] at the limit point or along the certified cycle.
  std::vector<double> samples;
  // For periodic outcomes: orbit points are p[0][0] of each cycle profile,
  // the residual is max ‖step^k(p) − p‖∞ over the full profiles.
  std::optional<onedim::OrbitCertificate> certificate;
};

struct SweepOptions {
  RunOptions run{20000, 1e-12, 1e-10, 1e-6, 64};
  double certificate_tol = 1e-10;
  std::size_t polish_iters = 20000;
};

namespace detail {

// Follows a detected cycle until its points repeat within tolerance, then
// records them. Returns nullopt if the cycle never tightens enough.
inline std::optional<onedim::OrbitCertificate> certify_cycle(
    const CongestionGame& game, MixedProfile p, const LearningRates& rates, Variant variant,
    std::size_t period, const SweepOptions& options) {
  const auto residual_at = [&](const MixedProfile& start, std::vector<MixedProfile>& orbit) {
    orbit.assign(1, start);
    for (std::size_t j = 1; j < period; ++j) orbit.push_back(step(game, orbit.back(), rates, variant));
    double r = 0.0;
    for (std::size_t j = 0; j < period; ++j) {
      const auto next = step(game, orbit[j], rates, variant);
      r = std::max(r, max_abs_difference(next, orbit[(j + 1) % period]));
    }
    return r;
  };
  std::vector<MixedProfile> orbit;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t <= options.polish_iters; t += period) {
    const double r = residual_at(p, orbit);
    if (r <= options.certificate_tol) {
      best = r;
      break;
    }
    for (std::size_t j = 0; j < period; ++j) p = step(game, p, rates, variant);
  }
  if (!(best <= options.certificate_tol)) return std::nullopt;
  onedim::OrbitCertificate cert;
  cert.kind = onedim::OrbitKind::kPeriodic;
  cert.period = period;
  cert.residual = best;
  for (const auto& q : orbit) cert.points.push_back(q(0, 0));
  for (std::size_t a = 0; a < orbit.size(); ++a) {
    for (std::size_t b = a + 1; b < orbit.size(); ++b) {
      cert.separation = std::min(cert.separation, max_abs_difference(orbit[a], orbit[b]));
    }
  }
  return cert;
}

}  // namespace detail

// Classifies each (rate, start) pair. Converged means the step norm fell
// below run.fp_tol; periodic-k needs a detected cycle and a certificate with
// residual <= certificate_tol; everything else is non-classified.
inline std::vector<SweepOutcome> rate_sweep(const CongestionGame& game, Variant variant,
                                            const std::vector<LearningRate>& grid,
                                            const std::vector<MixedProfile>& starts,
                                            const SweepOptions& options = {}) {
  if (grid.empty() || starts.empty()) throw InvalidConfig("sweep needs rates and starts");
  for (const auto& rate : grid) check_admissible(game, uniform_rates(game, rate), variant);
  for (const auto& s : starts) s.check_shape(game);
  return parallel_map(grid.size() * starts.size(), [&](std::size_t k) {
    const auto& rate = grid[k / starts.size()];
    const std::size_t s = k % starts.size();
    const auto rates = uniform_rates(game, rate);
    const auto traj = run(game, starts[s], rates, variant, options.run);
    SweepOutcome out;
    out.rate = rate;
    out.start = s;
    out.label = "non-classified";
    if (traj.termination == Termination::kConverged) {
      out.label = "converged";
      out.samples.push_back(traj.last()(0, 0));
    } else if (traj.termination == Termination::kCycleDetected) {
      auto cert = detail::certify_cycle(game, traj.last(), rates, variant, traj.period, options);
      if (cert) {
        out.label = "periodic-" + std::to_string(traj.period);
        out.period = traj.period;
        out.samples = cert->points;
        out.certificate = std::move(cert);
      }
    }
    if (out.samples.empty()) out.samples.push_back(traj.last()(0, 0));
    return out;
  });
}

// One row per attractor sample: epsilon, 1 - epsilon, start, outcome, period, p00.
inline std::string bifurcation_csv(const std::vector<SweepOutcome>& outcomes) {
  std::ostringstream out;
  out << "epsilon,one_minus_epsilon,start,outcome,period,p00\n";
  for (const auto& o : outcomes) {
    for (double v : o.samples) {
      out << format_double(o.rate.epsilon()) << ',' << format_double(o.rate.complement()) << ','
          << o.start << ',' << o.label << ',' << o.period << ',' << format_double(v) << '\n';
    }
  }
  return out.str();
}

inline nlohmann::json sweep_json(const std::vector<SweepOutcome>& outcomes) {
  auto rows = nlohmann::json::array();
  for (const auto& o : outcomes) {
    nlohmann::json j{{"epsilon", o.rate.epsilon()},
                     {"one_minus_epsilon", o.rate.complement()},
                     {"start", o.start},
                     {"outcome", o.label},
                     {"samples", o.samples}};
    if (o.period) j["period"] = o.period;
    if (o.certificate) j["certificate"] = onedim::certificate_to_json(*o.certificate);
    rows.push_back(std::move(j));
  }
  return rows;
}

struct BasinOptions {
  std::size_t max_steps = 2000;  // iterations of F²
  double target_tol = 1e-8;
  double flag_point = 0.5;
  double flag_tol = 1e-9;
};

enum class BasinOutcome { kTarget, kFlagged, kUnresolved };

struct BasinRecord {
  double start = 0.0;
  BasinOutcome outcome = BasinOutcome::kUnresolved;
  std::size_t target = 0;  // index into targets when outcome == kTarget
  std::size_t steps = 0;
  double last = 0.0;  // last even iterate
};

// Even iterates F^{2t}(x) for starts x until they land within target_tol of
// a target. Orbits passing within flag_tol of flag_point are flagged.
inline std::vector<BasinRecord> basin_sample(const onedim::IntervalMap& map,
                                             const std::vector<double>& starts,
                                             const std::vector<double>& targets,
                                             const BasinOptions& options = {}) {
  return parallel_map(starts.size(), [&](std::size_t k) {
    BasinRecord r;
    r.start = starts[k];
    double z = starts[k];
    for (std::size_t t = 0; t <= options.max_steps; ++t) {
      if (std::abs(z - options.flag_point) <= options.flag_tol ||
          std::abs(map(z) - options.flag_point) <= options.flag_tol) {
        r.outcome = BasinOutcome::kFlagged;
        break;
      }
      const auto hit = std::find_if(targets.begin(), targets.end(), [&](double target) {
        return std::abs(z - target) <= options.target_tol;
      });
      if (hit != targets.end()) {
        r.outcome = BasinOutcome::kTarget;
        r.target = static_cast<std::size_t>(hit - targets.begin());
        break;
      }
      if (t == options.max_steps) break;
      z = onedim::iterate(map, z, 2);
      r.steps = t + 1;
    }
    r.last = z;
    return r;
  });
}

// `count` starts uniform in (0, 1) drawn from `seed`.
inline std::vector<double> uniform_starts(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<double> xs;
  while (xs.size() < count) {
    const double x = rng.uniform();
    if (x > 0.0) xs.push_back(x);
  }
  return xs;
}

inline std::string basin_csv(const std::vector<BasinRecord>& records) {
  std::ostringstream out;
  out << "start,outcome,target,steps,last\n";
  for (const auto& r : records) {
    const char* label = r.outcome == BasinOutcome::kTarget    ? "target"
                        : r.outcome == BasinOutcome::kFlagged ? "flagged"
                                                              : "unresolved";
    out << format_double(r.start) << ',' << label << ',' << r.target << ',' << r.steps << ','
        << format_double(r.last) << '\n';
  }
  return out.str();
}

}  // namespace mwu_lab

#endif  // MWU_LAB_ANALYSIS_HPP
