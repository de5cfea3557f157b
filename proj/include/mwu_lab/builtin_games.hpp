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

#ifndef MWU_LAB_BUILTIN_GAMES_HPP
#define MWU_LAB_BUILTIN_GAMES_HPP

// The two balls / two bins games.
//
//   game1: c_e1(l) = l/2,  c_e2(l) = l/2,       rate 1 − e^{−10}
//   game2: c_e1(l) = l/4,  c_e2(l) = 1.4·l/4,   rate 1 − e^{−40}
//
// Under MWU_e with symmetric starts these reduce to the scalar maps
//   H(x) = x e^{−5(x+1)} / (x e^{−5(x+1)} + (1−x) e^{−5(2−x)})
//   G(x) = x e^{−10(x+1)} / (x e^{−10(x+1)} + (1−x) e^{−14(2−x)}).

#include <cmath>
#include <optional>
#include <string>

#include "mwu_lab/dynamics.hpp"
#include "mwu_lab/game.hpp"

namespace mwu_lab {

inline CongestionGame two_bins_game(double slope1, double slope2) {
  return CongestionGame(2, {"e1", "e2"}, {{{0}, {1}}, {{0}, {1}}},
                        {{slope1 * 1.0, slope1 * 2.0}, {slope2 * 1.0, slope2 * 2.0}});
}

inline CongestionGame builtin_game1() { return two_bins_game(1.0 / 2.0, 1.0 / 2.0); }
inline CongestionGame builtin_game2() { return two_bins_game(1.0 / 4.0, 1.4 / 4.0); }

// 1 − e^{−10}
inline LearningRate builtin_rate1() { return LearningRate::from_complement(std::exp(-10.0)); }
// 1 − e^{−40}
inline LearningRate builtin_rate2() { return LearningRate::from_complement(std::exp(-40.0)); }

struct BuiltinGame {
  CongestionGame game;
  LearningRate rate;
};

inline std::optional<BuiltinGame> find_builtin(const std::string& name) {
  if (name == "game1") return BuiltinGame{builtin_game1(), builtin_rate1()};
  if (name == "game2") return BuiltinGame{builtin_game2(), builtin_rate2()};
  return std::nullopt;
}

}  // namespace mwu_lab

#endif  // MWU_LAB_BUILTIN_GAMES_HPP
