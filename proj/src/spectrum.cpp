// Copyright 2026 The qvlab Authors
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

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "qvlab/error.hpp"
#include "qvlab/qubo.hpp"

namespace qvlab {

namespace {

struct LevelTracker {
  std::int64_t ground = std::numeric_limits<std::int64_t>::max();
  std::int64_t excited = std::numeric_limits<std::int64_t>::max();
  std::vector<BasisIndex> ground_states;
  std::vector<BasisIndex> excited_states;

  void visit(BasisIndex x, std::int64_t e) {
    if (e < ground) {
      excited = ground;
      excited_states = std::move(ground_states);
      ground = e;
      ground_states.assign(1, x);
    } else if (e == ground) {
      ground_states.push_back(x);
    } else if (e < excited) {
      excited = e;
      excited_states.assign(1, x);
    } else if (e == excited) {
      excited_states.push_back(x);
    }
  }
};

}  // namespace

SpectrumReport brute_force_spectrum(const QuboInstance& inst, int max_variables) {
  const int n = inst.n();
  if (n > max_variables)
    fail(ErrorCode::too_large, "exhaustive enumeration capped at n=" + std::to_string(max_variables) +
                                   ", instance has n=" + std::to_string(n));

  std::vector<std::vector<std::pair<int, int>>> adjacency(n);
  for (const Edge& e : inst.edges()) {
    adjacency[e.i].emplace_back(e.j, e.w);
    adjacency[e.j].emplace_back(e.i, e.w);
  }

  // Gray-code walk: local_field[k] = sum_j Q_kj x_j, flipping k changes E by
  // +-2 local_field[k].
  LevelTracker levels;
  std::vector<std::int64_t> local_field(n, 0);
  BasisIndex x = 0;
  std::int64_t energy = 0;
  levels.visit(x, energy);
  const BasisIndex dim = BasisIndex{1} << n;
  for (BasisIndex step = 1; step < dim; ++step) {
    const int k = std::countr_zero(step);
    const bool turning_on = !(x >> k & 1u);
    x ^= BasisIndex{1} << k;
    const std::int64_t sign = turning_on ? 1 : -1;
    energy += sign * 2 * local_field[k];
    for (auto [j, w] : adjacency[k]) local_field[j] += sign * w;
    levels.visit(x, energy);
  }

  if (levels.excited_states.empty())
    fail(ErrorCode::degenerate_spectrum, "spectrum has a single energy level; first excited state undefined");

  SpectrumReport report;
  report.n = n;
  report.ground_energy = levels.ground;
  report.first_excited_energy = levels.excited;
  report.ground_manifold = std::move(levels.ground_states);
  report.first_excited_manifold = std::move(levels.excited_states);
  std::sort(report.ground_manifold.begin(), report.ground_manifold.end());
  std::sort(report.first_excited_manifold.begin(), report.first_excited_manifold.end());

  int best = n;
  for (BasisIndex g : report.ground_manifold) {
    for (BasisIndex e : report.first_excited_manifold) {
      best = std::min(best, std::popcount(g ^ e));
      if (best == 1) break;
    }
    if (best == 1) break;
  }
  report.min_hamming_bits = best;
  return report;
}

}  // namespace qvlab
