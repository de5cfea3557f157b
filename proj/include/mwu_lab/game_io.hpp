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

#ifndef MWU_LAB_GAME_IO_HPP
#define MWU_LAB_GAME_IO_HPP

// Game files are JSON:
//
//   { "n_agents": 2,
//     "edges": ["e1", "e2"],
//     "strategies": [[["e1"], ["e2"]], [["e1"], ["e2"]]],
//     "costs": { "e1": [0.5, 1.0], "e2": [0.5, 1.0] } }
//
// strategies[i][g] lists the edge names of agent i's strategy g and
// costs[e][k-1] is the cost of edge e under load k.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mwu_lab/error.hpp"
#include "mwu_lab/game.hpp"

namespace mwu_lab {

inline nlohmann::json game_to_json(const CongestionGame& game) {
  nlohmann::json j;
  j["n_agents"] = game.num_agents();
  j["edges"] = game.edge_names();
  auto strategies = nlohmann::json::array();
  for (const auto& agent : game.strategies()) {
    auto list = nlohmann::json::array();
    for (const auto& s : agent) {
      auto names = nlohmann::json::array();
      for (auto e : s) names.push_back(game.edge_names()[e]);
      list.push_back(std::move(names));
    }
    strategies.push_back(std::move(list));
  }
  j["strategies"] = std::move(strategies);
  auto costs = nlohmann::json::object();
  for (std::size_t e = 0; e < game.num_edges(); ++e) {
    costs[game.edge_names()[e]] = game.cost_tables()[e];
  }
  j["costs"] = std::move(costs);
  return j;
}

namespace detail {

[[noreturn]] inline void field_error(const std::string& field,
                                     const std::string& message) {
  throw InvalidGame(field + ": " + message);
}

inline const nlohmann::json& require(const nlohmann::json& j,
                                     const std::string& key) {
  if (!j.contains(key)) field_error(key, "missing");
  return j.at(key);
}

}  // namespace detail

inline CongestionGame game_from_json(const nlohmann::json& j) {
  using detail::field_error;
  if (!j.is_object()) field_error("<root>", "expected an object");

  const auto& n_json = detail::require(j, "n_agents");
  if (!n_json.is_number_integer() || n_json.get<std::int64_t>() < 1) {
    field_error("n_agents", "expected a positive integer");
  }
  const auto n = n_json.get<std::size_t>();

  const auto& edges_json = detail::require(j, "edges");
  if (!edges_json.is_array() || edges_json.empty()) {
    field_error("edges", "expected a nonempty array of names");
  }
  std::vector<std::string> edges;
  std::map<std::string, std::size_t> index;
  for (std::size_t e = 0; e < edges_json.size(); ++e) {
    const std::string where = "edges[" + std::to_string(e) + "]";
    if (!edges_json[e].is_string()) field_error(where, "expected a string");
    auto name = edges_json[e].get<std::string>();
    if (!index.emplace(name, e).second) field_error(where, "duplicate edge '" + name + "'");
    edges.push_back(std::move(name));
  }

  const auto& strat_json = detail::require(j, "strategies");
  if (!strat_json.is_array() || strat_json.size() != n) {
    field_error("strategies", "expected one list per agent (" + std::to_string(n) + ")");
  }
  std::vector<std::vector<Strategy>> strategies(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& list = strat_json[i];
    const std::string agent_where = "strategies[" + std::to_string(i) + "]";
    if (!list.is_array() || list.empty()) {
      field_error(agent_where, "expected a nonempty list of strategies");
    }
    for (std::size_t g = 0; g < list.size(); ++g) {
      const std::string where = agent_where + "[" + std::to_string(g) + "]";
      if (!list[g].is_array() || list[g].empty()) {
        field_error(where, "expected a nonempty list of edge names");
      }
      Strategy s;
      for (const auto& name : list[g]) {
        if (!name.is_string()) field_error(where, "edge names must be strings");
        auto it = index.find(name.get<std::string>());
        if (it == index.end()) {
          field_error(where, "unknown edge '" + name.get<std::string>() + "'");
        }
        s.push_back(it->second);
      }
      strategies[i].push_back(std::move(s));
    }
  }

  const auto& costs_json = detail::require(j, "costs");
  if (!costs_json.is_object()) field_error("costs", "expected an object keyed by edge");
  std::vector<std::vector<double>> costs(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string where = "costs." + edges[e];
    if (!costs_json.contains(edges[e])) field_error(where, "missing");
    const auto& table = costs_json.at(edges[e]);
    if (!table.is_array() || table.size() != n) {
      field_error(where, "expected " + std::to_string(n) + " numbers");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!table[k].is_number()) {
        field_error(where + "[" + std::to_string(k) + "]", "expected a number");
      }
      costs[e].push_back(table[k].get<double>());
    }
  }
  for (const auto& [key, value] : costs_json.items()) {
    if (!index.contains(key)) field_error("costs." + key, "undeclared edge");
  }
  return CongestionGame(n, std::move(edges), std::move(strategies), std::move(costs));
}

// Parse errors carry nlohmann's line/column position.
inline CongestionGame parse_game(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidGame(e.what());
  }
  return game_from_json(j);
}

inline CongestionGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidGame("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_game(buffer.str());
}

// FNV-1a over the canonical JSON dump.
inline std::uint64_t game_hash(const CongestionGame& game) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : game_to_json(game).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex_hash(std::uint64_t h) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) out[static_cast<std::size_t>(k)] = kDigits[h & 0xf];
  return out;
}

}  // namespace mwu_lab

#endif  // MWU_LAB_GAME_IO_HPP
