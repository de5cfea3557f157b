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

// Two balls, two bins: the linear update settles on the equilibrium while
// the exponential one, with the same learning rate, falls into a 2-cycle.

#include <cstdio>

#include "mwu_lab/mwu_lab.hpp"

int main() {
  using namespace mwu_lab;
  const auto game = builtin_game1();
  const auto rates = uniform_rates(game, builtin_rate1());
  const auto start = MixedProfile::first_strategy_weight(game, 0.3);

  for (auto variant : {Variant::kLinear, Variant::kExponential}) {
    const auto traj = run(game, start, rates, variant);
    std::printf("%-6s  %-14s after %3zu steps, x = %.12f\n", to_string(variant).c_str(),
                to_string(traj.termination).c_str(), traj.steps.size(), traj.last()(0, 0));
    for (std::size_t t = 0; t < traj.steps.size() && t < 6; ++t) {
      std::printf("        t=%zu  x=%.12f  psi=%.12f\n", t + 1, traj.steps[t].profile(0, 0),
                  traj.steps[t].psi);
    }
  }
  return 0;
}
