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

#ifndef MWU_LAB_REPORT_IO_HPP
#define MWU_LAB_REPORT_IO_HPP

// CSV and JSON writers for trajectories, orbit certificates and cobweb
// tables. Doubles are printed with 17 significant digits so reruns produce
// byte-identical files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mwu_lab/dynamics.hpp"
#include "mwu_lab/error.hpp"
#include "mwu_lab/game.hpp"
#include "mwu_lab/game_io.hpp"
#include "mwu_lab/onedim.hpp"

namespace mwu_lab {

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// JSON has no infinities; they are written as null.
inline nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
  return out.str();
}

inline nlohmann::json trajectory_summary(const CongestionGame& game, const Trajectory& traj,
                                         const LearningRates& rates, Variant variant,
                                         const RunOptions& options) {
  nlohmann::json j;
  j["game_hash"] = hex_hash(game_hash(game));
  j["variant"] = to_string(variant);
  auto eps = nlohmann::json::array();
  auto complements = nlohmann::json::array();
  for (const auto& r : rates) {
    eps.push_back(r.epsilon());
    complements.push_back(r.complement());
  }
  j["epsilon"] = std::move(eps);
  j["one_minus_epsilon"] = std::move(complements);
  j["max_iters"] = options.max_iters;
  j["fp_tol"] = options.fp_tol;
  j["cycle_tol"] = options.cycle_tol;
  j["termination"] = to_string(traj.termination);
  j["steps"] = traj.steps.size();
  if (traj.termination == Termination::kCycleDetected) j["period"] = traj.period;
  const auto& last = traj.last();
  j["final_profile"] = last.blocks();
  j["final_psi"] = expected_potential(game, last);
  j["final_nash_residual"] = nash_residual(game, last);
  return j;
}

// First line: '#' followed by the JSON summary. Then columns
// t, psi, q, step_norm, p[i][g]; q is empty for the exponential variant.
inline std::string trajectory_csv(const CongestionGame& game, const Trajectory& traj,
                                  const LearningRates& rates, Variant variant,
                                  const RunOptions& options) {
  std::ostringstream out;
  out << '#' << trajectory_summary(game, traj, rates, variant, options).dump() << '\n';
  out << "t,psi,q,step_norm";
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    for (std::size_t g = 0; g < game.num_strategies(i); ++g) out << ",p[" << i << "][" << g << "]";
  }
  out << '\n';
  const auto row = [&](std::size_t t, const MixedProfile& p, double psi,
                       const std::optional<double>& q, double norm) {
    out << t << ',' << format_double(psi) << ',' << (q ? format_double(*q) : "") << ','
        << format_double(norm);
    for (const auto& block : p.blocks()) {
      for (double v : block) out << ',' << format_double(v);
    }
    out << '\n';
  };
  row(0, traj.initial, traj.initial_psi, traj.initial_q, 0.0);
  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    const auto& s = traj.steps[t];
    row(t + 1, s.profile, s.psi, s.q, s.step_norm);
  }
  return out.str();
}

inline nlohmann::json trajectory_json(const CongestionGame& game, const Trajectory& traj,
                                      const LearningRates& rates, Variant variant,
                                      const RunOptions& options) {
  auto j = trajectory_summary(game, traj, rates, variant, options);
  auto steps = nlohmann::json::array();
  steps.push_back({{"t", 0}, {"psi", traj.initial_psi}, {"profile", traj.initial.blocks()}});
  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    const auto& s = traj.steps[t];
    nlohmann::json row{{"t", t + 1}, {"psi", s.psi}, {"step_norm", s.step_norm},
                       {"profile", s.profile.blocks()}};
    if (s.q) row["q"] = *s.q;
    steps.push_back(std::move(row));
  }
  j["trajectory"] = std::move(steps);
  return j;
}

namespace onedim {

inline nlohmann::json certificate_to_json(const OrbitCertificate& c) {
  nlohmann::json j;
  j["kind"] = kind_label(c);
  j["period"] = c.period;
  j["points"] = c.points;
  j["residual"] = c.residual;
  j["separation"] = json_number(c.separation);
  auto brackets = nlohmann::json::array();
  for (const auto& [a, b] : c.brackets) brackets.push_back({a, b});
  j["brackets"] = std::move(brackets);
  return j;
}

inline nlohmann::json li_yorke_to_json(const LiYorkeReport& r) {
  return {{"kind", "li-yorke"}, {"a", r.a}, {"b", r.b}, {"c", r.c}, {"d", r.d},
          {"holds", r.holds}};
}

inline std::string cobweb_csv(const IntervalMap& map, std::size_t n = 1000) {
  return csv_table({"x", "F", "F2", "F3", "F10"}, cobweb_table(map, n));
}

}  // namespace onedim
}  // namespace mwu_lab

#endif  // MWU_LAB_REPORT_IO_HPP
