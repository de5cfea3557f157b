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

#ifndef MWU_LAB_CLI_SUPPORT_HPP
#define MWU_LAB_CLI_SUPPORT_HPP

// Parsing helpers shared by the command-line tool and its tests.

#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mwu_lab/builtin_games.hpp"
#include "mwu_lab/dynamics.hpp"
#include "mwu_lab/error.hpp"
#include "mwu_lab/game.hpp"
#include "mwu_lab/game_io.hpp"

namespace mwu_lab::cli {

namespace detail {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

inline double parse_number(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidConfig("cannot parse '" + context + "'");
  return v;
}

}  // namespace detail

// Accepts "0.3", "1-exp(-10)" and "1-1e-5". The last two keep the
// complement exactly, so rates that round to 1.0 stay usable.
inline LearningRate parse_learning_rate(const std::string& text) {
  const std::string s = detail::strip_spaces(text);
  if (s.rfind("1-exp(", 0) == 0 && s.size() > 7 && s.back() == ')') {
    const double x = detail::parse_number(s.substr(6, s.size() - 7), text);
    return LearningRate::from_complement(std::exp(x));
  }
  if (s.rfind("1-", 0) == 0) {
    return LearningRate::from_complement(detail::parse_number(s.substr(2), text));
  }
  return LearningRate::from_epsilon(detail::parse_number(s, text));
}

// "game1" and "game2" name the builtin games; anything else is a path.
// For builtins the default rate is stored in `default_rate`.
inline CongestionGame resolve_game(const std::string& name_or_path,
                                   std::optional<LearningRate>* default_rate = nullptr) {
  if (auto b = find_builtin(name_or_path)) {
    if (default_rate) *default_rate = b->rate;
    return b->game;
  }
  if (default_rate) default_rate->reset();
  return load_game(name_or_path);
}

// Rates for every agent: a single value is shared, and with `per_agent`
// the list must hold exactly one value per agent.
inline LearningRates resolve_rates(const CongestionGame& game, const std::vector<std::string>& eps,
                                   bool per_agent, std::optional<LearningRate> fallback) {
  if (eps.empty()) {
    if (!fallback) throw InvalidConfig("--eps is required for games loaded from a file");
    return uniform_rates(game, *fallback);
  }
  if (per_agent) {
    if (eps.size() != game.num_agents()) {
      throw InvalidConfig("--eps-per-agent needs " + std::to_string(game.num_agents()) +
                          " values, got " + std::to_string(eps.size()));
    }
    LearningRates rates;
    for (const auto& e : eps) rates.push_back(parse_learning_rate(e));
    return rates;
  }
  if (eps.size() != 1) throw InvalidConfig("pass one --eps value or use --eps-per-agent");
  return uniform_rates(game, parse_learning_rate(eps[0]));
}

inline Variant parse_variant(const std::string& s) {
  if (s == "linear") return Variant::kLinear;
  if (s == "exp") return Variant::kExponential;
  throw InvalidConfig("variant must be 'linear' or 'exp'");
}

}  // namespace mwu_lab::cli

#endif  // MWU_LAB_CLI_SUPPORT_HPP
