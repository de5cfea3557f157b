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

// mwu_lab: run MWU dynamics on congestion games and analyse the 1-D maps.
//
//   mwu_lab simulate --game game1 --variant exp --start 0.3
//   mwu_lab sweep --game game1 --variant exp --grid 0.5,0.99999,50
//   mwu_lab verify-lyapunov --seed 1 --games 100
//   mwu_lab analyze-1d --map G --max-period 6 --bracket 0.4 0.5 --out g_dir
//   mwu_lab reproduce-paper --out results
//
// Exit codes: 0 success, 1 a check failed, 2 bad input, 3 I/O error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwu_lab/mwu_lab.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mwu_lab;

constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kIoFailure = 3;

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    write_text_file(out, content);
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  }
}

RunOptions run_options(std::size_t iters, double fp_tol) {
  RunOptions o;
  o.max_iters = iters;
  o.fp_tol = fp_tol;
  return o;
}

MixedProfile start_profile(const CongestionGame& game, const std::optional<double>& start) {
  return start ? MixedProfile::first_strategy_weight(game, *start) : MixedProfile::uniform(game);
}

struct Common {
  std::string game = "game1";
  std::string variant = "linear";
  std::vector<std::string> eps;
  bool eps_per_agent = false;
  std::size_t iters = 10000;
  double fp_tol = 1e-12;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c, bool with_game = true) {
  if (with_game) {
    cmd->add_option("--game", c.game, "Game JSON path or builtin name (game1, game2)");
  }
  cmd->add_option("--variant", c.variant, "Update rule")
      ->check(CLI::IsMember({"linear", "exp"}));
  cmd->add_option("--eps", c.eps,
                  "Learning rate(s); accepts 0.3, 1-exp(-10) or 1-1e-5");
  cmd->add_flag("--eps-per-agent", c.eps_per_agent, "Treat --eps as one value per agent");
  cmd->add_option("--iters", c.iters, "Maximum iterations");
  cmd->add_option("--fp-tol", c.fp_tol, "Convergence threshold on the step L-inf norm");
  cmd->add_option("--out", c.out, "Output file or directory");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

int simulate(const Common& c, const std::optional<double>& start) {
  std::optional<LearningRate> fallback;
  const auto game = cli::resolve_game(c.game, &fallback);
  const auto rates = cli::resolve_rates(game, c.eps, c.eps_per_agent, fallback);
  const auto variant = cli::parse_variant(c.variant);
  const auto options = run_options(c.iters, c.fp_tol);
  const auto traj = run(game, start_profile(game, start), rates, variant, options);
  if (c.format == "json") {
    emit(c.out, trajectory_json(game, traj, rates, variant, options).dump(2) + "\n");
  } else {
    emit(c.out, trajectory_csv(game, traj, rates, variant, options));
  }
  if (!c.out.empty() && c.out != "-") {
    std::cout << to_string(traj.termination) << " after " << traj.steps.size() << " steps\n";
  }
  return 0;
}

std::vector<LearningRate> sweep_grid(const Common& c, const std::vector<double>& grid) {
  std::vector<LearningRate> rates;
  for (const auto& e : c.eps) rates.push_back(cli::parse_learning_rate(e));
  if (!grid.empty()) {
    if (grid.size() != 3 || grid[2] < 1) {
      throw InvalidConfig("--grid takes lo,hi,count");
    }
    const auto n = static_cast<std::size_t>(grid[2]);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
      rates.push_back(LearningRate::from_epsilon(grid[0] + t * (grid[1] - grid[0])));
    }
  }
  if (rates.empty()) throw InvalidConfig("sweep needs --eps or --grid");
  return rates;
}

int sweep(const Common& c, const std::vector<double>& grid, const std::vector<double>& starts) {
  const auto game = cli::resolve_game(c.game);
  const auto variant = cli::parse_variant(c.variant);
  std::vector<MixedProfile> profiles;
  for (double s : starts) profiles.push_back(MixedProfile::first_strategy_weight(game, s));
  SweepOptions options;
  options.run = run_options(c.iters, c.fp_tol);
  const auto outcomes = rate_sweep(game, variant, sweep_grid(c, grid), profiles, options);
  emit(c.out, c.format == "json" ? sweep_json(outcomes).dump(2) + "\n" : bifurcation_csv(outcomes));
  return 0;
}

int lyapunov(const Common& c, bool has_game, std::uint64_t seed, std::size_t games,
             std::size_t starts) {
  ExperimentConfig config;
  config.seed = seed;
  config.num_games = games;
  config.starts = starts;
  config.variant = cli::parse_variant(c.variant);
  config.run = run_options(c.iters, c.fp_tol);
  config.step_threshold = c.fp_tol;
  std::optional<LearningRate> fallback;
  if (has_game) {
    config.games.push_back(cli::resolve_game(c.game, &fallback));
  }
  if (c.eps.size() > 1) throw InvalidConfig("verify-lyapunov takes a single --eps");
  if (!c.eps.empty()) {
    config.rate = cli::parse_learning_rate(c.eps[0]);
  } else if (fallback) {
    config.rate = fallback;
  }
  const auto report = verify_lyapunov(config);
  if (!c.out.empty()) emit(c.out, lyapunov_report_json(report).dump(2) + "\n");
  std::cout << report.records.size() << " trajectories, " << report.total_violations()
            << " violations (max " << format_double(report.max_violation()) << ")\n";
  return config.variant == Variant::kLinear && report.total_violations() > 0 ? kCheckFailed : 0;
}

onedim::IntervalMap pick_map(const std::string& map, const Common& c, bool has_game) {
  if (has_game) {
    std::optional<LearningRate> fallback;
    const auto game = cli::resolve_game(c.game, &fallback);
    return onedim::symmetric_reduction(game, cli::resolve_rates(game, c.eps, false, fallback),
                                       cli::parse_variant(c.variant));
  }
  if (map == "H") return onedim::h_map();
  if (map == "G") return onedim::g_map();
  throw InvalidConfig("--map must be H or G");
}

int analyze_1d(const Common& c, const std::string& map_name, bool has_game,
               std::size_t max_period, const std::vector<double>& bracket) {
  const auto map = pick_map(map_name, c, has_game);
  nlohmann::json summary;
  summary["map"] = map.name();
  auto orbits = nlohmann::json::object();
  for (std::size_t k = 1; k <= max_period; ++k) {
    auto list = nlohmann::json::array();
    for (const auto& cert : onedim::find_fixed_points(map, k)) {
      list.push_back(onedim::certificate_to_json(cert));
    }
    orbits[std::to_string(k)] = std::move(list);
  }
  summary["roots_of_iterates"] = std::move(orbits);
  for (std::size_t k : {1, 2}) {
    auto parts = nlohmann::json::array();
    for (const auto& s : onedim::derivative_sign_intervals(map, k)) {
      parts.push_back({{"lo", s.lo}, {"hi", s.hi}, {"sign", s.sign}});
    }
    summary["derivative_signs_" + std::to_string(k)] = std::move(parts);
  }
  if (!bracket.empty()) {
    if (bracket.size() != 2) throw InvalidConfig("--bracket takes two numbers");
    const auto cert = onedim::find_period3(map, bracket[0], bracket[1]);
    summary["period3"] = onedim::certificate_to_json(cert);
    const auto ly = onedim::li_yorke_from_orbit(map, cert);
    summary["li_yorke"] = ly ? onedim::li_yorke_to_json(*ly) : nlohmann::json(nullptr);
  }
  if (c.out.empty()) {
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
  const fs::path dir(c.out);
  ensure_directory(dir);
  write_text_file((dir / ("orbits_" + map.name() + ".json")).string(), summary.dump(2) + "\n");
  write_text_file((dir / ("cobweb_" + map.name() + ".csv")).string(), onedim::cobweb_csv(map));
  std::cout << "wrote " << (dir / ("orbits_" + map.name() + ".json")).string() << " and "
            << (dir / ("cobweb_" + map.name() + ".csv")).string() << "\n";
  return 0;
}

int reproduce_paper(const std::string& out) {
  const fs::path dir(out);
  ensure_directory(dir);
  const auto file = [&](const std::string& name) { return (dir / name).string(); };
  std::size_t written = 0;
  const auto put = [&](const std::string& name, const std::string& content) {
    write_text_file(file(name), content);
    ++written;
  };

  const auto h = onedim::h_map();
  const auto g = onedim::g_map();
  const auto game1 = *find_builtin("game1");
  const auto game2 = *find_builtin("game2");
  const auto rates1 = uniform_rates(game1.game, game1.rate);
  const auto rates2 = uniform_rates(game2.game, game2.rate);

  put("cobweb_H.csv", onedim::cobweb_csv(h));
  put("cobweb_G.csv", onedim::cobweb_csv(g));
  put("cobweb_H_linear.csv",
      onedim::cobweb_csv(onedim::symmetric_reduction(game1.game, rates1, Variant::kLinear)));
  put("cobweb_G_linear.csv",
      onedim::cobweb_csv(onedim::symmetric_reduction(game2.game, rates2, Variant::kLinear)));

  const auto h2 = onedim::find_fixed_points(h, 2);
  auto h2_json = nlohmann::json::array();
  for (const auto& c : h2) h2_json.push_back(onedim::certificate_to_json(c));
  put("H2_fixed_points.json", h2_json.dump(2) + "\n");
  const auto cycle = onedim::genuine_orbits(h2, 2);
  put("H_period2_orbit.json",
      (cycle.empty() ? nlohmann::json(nullptr) : onedim::certificate_to_json(cycle.front()))
              .dump(2) +
          "\n");

  const auto p3 = onedim::find_period3(g, 0.4, 0.5);
  put("G_period3.json", onedim::certificate_to_json(p3).dump(2) + "\n");
  const auto ly = onedim::li_yorke_from_orbit(g, p3);
  put("G_li_yorke.json", (ly ? onedim::li_yorke_to_json(*ly) : nlohmann::json(nullptr)).dump(2) + "\n");
  auto periodic = nlohmann::json::object();
  for (std::size_t k = 1; k <= 6; ++k) {
    auto list = nlohmann::json::array();
    for (const auto& c : onedim::genuine_orbits(onedim::find_fixed_points(g, k), k)) {
      list.push_back(onedim::certificate_to_json(c));
    }
    periodic[std::to_string(k)] = std::move(list);
  }
  put("G_periodic_orbits.json", periodic.dump(2) + "\n");

  const RunOptions options{5000, 1e-12, 1e-10, 1e-6, 64};
  for (const auto& [name, b, rates] :
       {std::tuple{"game1", &game1, &rates1}, std::tuple{"game2", &game2, &rates2}}) {
    const auto p0 = MixedProfile::first_strategy_weight(b->game, 0.3);
    for (auto variant : {Variant::kExponential, Variant::kLinear}) {
      const auto traj = run(b->game, p0, *rates, variant, options);
      put(std::string("trajectory_") + name + "_" + to_string(variant) + ".csv",
          trajectory_csv(b->game, traj, *rates, variant, options));
    }
    ExperimentConfig config;
    config.games = {b->game};
    config.rate = b->rate;
    config.run = options;
    put(std::string("lyapunov_") + name + ".json",
        lyapunov_report_json(verify_lyapunov(config)).dump(2) + "\n");
  }

  const auto records =
      basin_sample(h, uniform_starts(acceptance::kBasinSeed, 1000),
                   cycle.size() == 2
                       ? std::vector<double>{cycle[0].points[0], cycle[1].points[0]}
                       : std::vector<double>{});
  put("H_basin.csv", basin_csv(records));

  std::string report;
  std::optional<acceptance::CheckResult> first_failure;
  for (const auto& check : acceptance::all_checks()) {
    const auto r = acceptance::run_check(check);
    report += acceptance::result_line(r) + "\n";
    std::cout << acceptance::result_line(r) << "\n";
    if (!r.passed && !first_failure) first_failure = r;
  }
  put("acceptance.txt", report);
  std::cout << "wrote " << written << " files to " << dir.string() << "\n";
  if (first_failure) {
    std::cerr << "first failing check: [" << first_failure->id << "] " << first_failure->name
              << "\n";
    return kCheckFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicative weights dynamics on congestion games"};
  app.require_subcommand(1);

  Common sim_opts;
  std::optional<double> sim_start;
  auto* sim = app.add_subcommand("simulate", "Run one trajectory");
  add_common(sim, sim_opts);
  sim->add_option("--start", sim_start, "Weight on every agent's first strategy");

  Common sweep_opts;
  sweep_opts.iters = 20000;
  std::vector<double> grid;
  std::vector<double> sweep_starts{0.3};
  auto* sw = app.add_subcommand("sweep", "Classify outcomes over a grid of learning rates");
  add_common(sw, sweep_opts);
  sw->add_option("--grid", grid, "Evenly spaced epsilons: lo,hi,count")->delimiter(',');
  sw->add_option("--start", sweep_starts, "First-strategy weights to start from")->delimiter(',');

  Common lya_opts;
  lya_opts.iters = 500;
  std::uint64_t seed = 1;
  std::size_t games = 100;
  std::size_t starts = 5;
  auto* lya = app.add_subcommand("verify-lyapunov", "Check that the expected potential decreases");
  add_common(lya, lya_opts);
  lya->add_option("--seed", seed, "Seed for random games, starts and rates");
  lya->add_option("--games", games, "Number of random games when --game is absent");
  lya->add_option("--starts", starts, "Random interior starts per game");

  Common ana_opts;
  ana_opts.variant = "exp";
  std::string map_name = "H";
  std::size_t max_period = 3;
  std::vector<double> bracket;
  auto* ana = app.add_subcommand("analyze-1d", "Certify fixed and periodic points of a 1-D map");
  add_common(ana, ana_opts);
  ana->add_option("--map", map_name, "Closed-form map H or G (ignored with --game)");
  ana->add_option("--max-period", max_period, "Largest k for F^k(x) = x");
  ana->add_option("--bracket", bracket, "Interval for the period-3 search")->expected(2);

  std::string repro_out = "results";
  auto* repro = app.add_subcommand("reproduce-paper", "Write all tables and run every check");
  repro->add_option("--out", repro_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return simulate(sim_opts, sim_start);
    if (*sw) return sweep(sweep_opts, grid, sweep_starts);
    if (*lya) return lyapunov(lya_opts, lya->count("--game") > 0, seed, games, starts);
    if (*ana) return analyze_1d(ana_opts, map_name, ana->count("--game") > 0, max_period, bracket);
    if (*repro) return reproduce_paper(repro_out);
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kIoFailure;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
