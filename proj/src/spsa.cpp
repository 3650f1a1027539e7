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

#include <cmath>

#include "optim_detail.hpp"
#include "qvlab/optim.hpp"

namespace qvlab {

OptimizationTrace spsa(const Objective& cost, std::span<const double> start, const OptimizerConfig& cfg,
                       Rng& rng) {
  cfg.validate();
  const SpsaSettings& s = cfg.spsa;
  detail::CountingObjective f(cost);
  detail::ChangeMonitor monitor(cfg.ftol, cfg.patience);

  const std::size_t d = start.size();
  std::vector<double> x(start.begin(), start.end());
  std::vector<double> plus(d), minus(d), delta(d);

  OptimizationTrace trace;
  trace.best_params = x;
  trace.best_cost = f(x);

  const double stability = s.stability < 0 ? 0.1 * cfg.max_iterations : s.stability;
  const bool calibrate = s.a <= 0.0;
  double a = s.a;
  double diff_sum = 0.0;
  int diff_count = 0;
  std::bernoulli_distribution coin(0.5);

  for (int k = 0; k < cfg.max_iterations; ++k) {
    const double ck = s.c / std::pow(k + 1.0, s.gamma);
    for (std::size_t i = 0; i < d; ++i) {
      delta[i] = coin(rng) ? 1.0 : -1.0;
      plus[i] = x[i] + ck * delta[i];
      minus[i] = x[i] - ck * delta[i];
    }
    const double y_plus = f(plus);
    const double y_minus = f(minus);
    const double diff = y_plus - y_minus;

    // Every gradient component has magnitude |diff| / (2 ck); pick `a` so a
    // typical early step moves each angle by target_first_step. A single
    // difference can be arbitrarily small, hence the running mean.
    if (calibrate && k < std::max(1, s.calibration_iterations) && diff != 0.0) {
      diff_sum += std::abs(diff) / ck;
      ++diff_count;
      a = s.target_first_step * std::pow(1.0 + stability, s.alpha) * 2.0 * diff_count / diff_sum;
    }
    if (a > 0.0) {
      const double ak = a / std::pow(k + 1.0 + stability, s.alpha);
      for (std::size_t i = 0; i < d; ++i) x[i] -= ak * diff / (2.0 * ck * delta[i]);
    }

    if (y_plus < trace.best_cost) {
      trace.best_cost = y_plus;
      trace.best_params = plus;
    }
    if (y_minus < trace.best_cost) {
      trace.best_cost = y_minus;
      trace.best_params = minus;
    }
    trace.iterations = k + 1;
    trace.cost_history.push_back(trace.best_cost);
    if (monitor.update(0.5 * (y_plus + y_minus))) {
      trace.terminated_by = Termination::converged;
      break;
    }
  }
  // The probes sit c_k away from the iterate, so score the iterate itself.
  const double y_final = f(x);
  if (y_final < trace.best_cost) {
    trace.best_cost = y_final;
    trace.best_params = x;
    if (!trace.cost_history.empty()) trace.cost_history.back() = y_final;
  }
  trace.final_params = std::move(x);
  trace.evaluations = f.count();
  return trace;
}

}  // namespace qvlab
