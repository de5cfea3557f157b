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

// Loads a game from JSON, builds the polynomial Q for a small learning rate
// and follows the linear update, printing Q as it rises.
//
//   custom_game samples/games/routing.json

#include <cstdio>
#include <exception>

#include "mwu_lab/mwu_lab.hpp"

int main(int argc, char** argv) {
  using namespace mwu_lab;
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s GAME.json\n", argv[0]);
    return 2;
  }
  try {
    const auto game = load_game(argv[1]);
    double worst = 0.0;
    for (double b : q_rate_bounds(game)) worst = std::max(worst, b);
    const auto rates = uniform_rates(game, LearningRate::from_epsilon(0.9 / worst));
    const auto q = build_q(game, rates);
    std::printf("Q: %zu monomials, degree %zu, eps = %.4f\n", q.terms().size(), q.degree(),
                rates[0].epsilon());

    auto p = MixedProfile::uniform(game);
    for (int t = 0; t <= 40; ++t) {
      if (t % 5 == 0) {
        std::printf("t=%2d  Q=%.12f  psi=%.12f  nash residual=%.3e\n", t, q.eval(p.blocks()),
                    expected_potential(game, p), nash_residual(game, p));
      }
      p = step_linear(game, p, rates);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 0;
}
