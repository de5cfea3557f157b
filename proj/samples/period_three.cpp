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

// Certifies a period-3 orbit of G, checks the Li-Yorke chain on it and
// lists how many orbits of each small period exist.

#include <cstdio>

#include "mwu_lab/mwu_lab.hpp"

int main() {
  using namespace mwu_lab::onedim;
  const auto g = g_map();
  std::printf("G^3(0.4) - 0.4 = %+.6f\n", iterate(g, 0.4, 3) - 0.4);
  std::printf("G^3(0.5) - 0.5 = %+.6f\n", iterate(g, 0.5, 3) - 0.5);

  const auto cert = find_period3(g, 0.4, 0.5);
  std::printf("orbit: %.15f %.15f %.15f (residual %.2e)\n", cert.points[0], cert.points[1],
              cert.points[2], cert.residual);
  if (const auto ly = li_yorke_from_orbit(g, cert)) {
    std::printf("Li-Yorke at a=%.12f: b=%.12f c=%.12f d=%.12f\n", ly->a, ly->b, ly->c, ly->d);
  }
  for (std::size_t k = 1; k <= 6; ++k) {
    std::printf("period %zu: %zu points\n", k, genuine_orbits(find_fixed_points(g, k), k).size());
  }
  return 0;
}
