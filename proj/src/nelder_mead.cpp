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
#include <numeric>

#include "optim_detail.hpp"
#include "qvlab/optim.hpp"

namespace qvlab {

OptimizationTrace nelder_mead(const Objective& cost, std::span<const double> start,
                              const OptimizerConfig& cfg) {
  cfg.validate();
  const NelderMeadSettings& s = cfg.nelder_mead;
  detail::CountingObjective f(cost);
  const std::size_t d = start.size();

  std::vector<std::vector<double>> simplex(d + 1, std::vector<double>(start.begin(), start.end()));
  for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += s.initial_step;
  std::vector<double> value(d + 1);
  for (std::size_t i = 0; i <= d; ++i) value[i] = f(simplex[i]);

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), reflected(d), trial(d);
  auto along = [&](double t, const std::vector<double>& toward, std::vector<double>& out) {
    for (std::size_t k = 0; k < d; ++k) out[k] = centroid[k] + t * (toward[k] - centroid[k]);
  };

  OptimizationTrace trace;
  trace.terminated_by = Termination::max_iterations;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    const std::size_t best = order.front(), worst = order.back();
    const std::size_t second_worst = order[d > 0 ? d - 1 : 0];
    if (value[worst] - value[best] < cfg.ftol) {
      trace.terminated_by = Termination::converged;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[order[r]][k] / static_cast<double>(d);

    along(-s.reflection, simplex[worst], reflected);
    const double f_reflected = f(reflected);
    if (f_reflected < value[best]) {
      along(-s.reflection * s.expansion, simplex[worst], trial);
      const double f_expanded = f(trial);
      if (f_expanded < f_reflected) {
        simplex[worst] = trial;
        value[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        value[worst] = f_reflected;
      }
    } else if (f_reflected < value[second_worst]) {
      simplex[worst] = reflected;
      value[worst] = f_reflected;
    } else {
      bool accepted = false;
      if (f_reflected < value[worst]) {
        along(-s.reflection * s.contraction, simplex[worst], trial);
        const double f_contracted = f(trial);
        if (f_contracted <= f_reflected) {
          simplex[worst] = trial;
          value[worst] = f_contracted;
          accepted = true;
        }
      } else {
        along(s.contraction, simplex[worst], trial);
        const double f_contracted = f(trial);
        if (f_contracted < value[worst]) {
          simplex[worst] = trial;
          value[worst] = f_contracted;
          accepted = true;
        }
      }
      if (!accepted) {
        for (std::size_t r = 1; r <= d; ++r) {
          auto& vertex = simplex[order[r]];
          for (std::size_t k = 0; k < d; ++k)
            vertex[k] = simplex[best][k] + s.shrink * (vertex[k] - simplex[best][k]);
          value[order[r]] = f(vertex);
        }
      }
    }
    trace.iterations = it + 1;
    trace.cost_history.push_back(*std::min_element(value.begin(), value.end()));
  }

  const auto best = static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
  trace.best_params = simplex[best];
  trace.best_cost = value[best];
  trace.final_params = simplex[best];
  trace.evaluations = f.count();
  return trace;
}

}  // namespace qvlab
