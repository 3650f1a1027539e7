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

#include <string>

#include "optim_detail.hpp"
#include "qvlab/optim.hpp"

namespace qvlab {

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::spsa: return "spsa";
    case OptimizerKind::nelder_mead: return "nelder-mead";
    case OptimizerKind::quasi_newton: return "quasi-newton";
  }
  return "spsa";
}

OptimizerKind optimizer_from_string(std::string_view name) {
  if (name == "spsa") return OptimizerKind::spsa;
  if (name == "nelder-mead" || name == "nm") return OptimizerKind::nelder_mead;
  if (name == "quasi-newton" || name == "bfgs") return OptimizerKind::quasi_newton;
  fail(ErrorCode::invalid_argument, "unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(Termination t) {
  return t == Termination::converged ? "converged" : "max_iterations";
}

void OptimizerConfig::validate() const {
  if (max_iterations < 1) fail(ErrorCode::invalid_argument, "max_iterations must be >= 1");
  if (!(ftol > 0)) fail(ErrorCode::invalid_argument, "ftol must be positive");
  if (patience < 1) fail(ErrorCode::invalid_argument, "patience must be >= 1");
  if (kind == OptimizerKind::spsa && !(spsa.c > 0))
    fail(ErrorCode::invalid_argument, "SPSA perturbation c must be positive");
  if (kind == OptimizerKind::quasi_newton && !(quasi_newton.fd_step > 0))
    fail(ErrorCode::invalid_argument, "finite-difference step must be positive");
}

OptimizerConfig OptimizerConfig::defaults(OptimizerKind kind, bool stochastic_cost) {
  OptimizerConfig cfg;
  cfg.kind = kind;
  cfg.ftol = stochastic_cost ? 1e-2 : 1e-6;
  switch (kind) {
    case OptimizerKind::spsa:
      cfg.max_iterations = 1000;
      cfg.patience = 10;
      break;
    case OptimizerKind::nelder_mead:
      cfg.max_iterations = 5000;
      cfg.patience = 1;
      break;
    case OptimizerKind::quasi_newton:
      cfg.max_iterations = 500;
      cfg.patience = 2;
      break;
  }
  return cfg;
}

std::vector<double> finite_difference_gradient(const Objective& cost, std::span<const double> x, double step) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = cost(probe);
    probe[i] = x[i] - step;
    const double down = cost(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

OptimizationTrace optimize(const Objective& cost, std::span<const double> start, const OptimizerConfig& cfg,
                           Rng& rng) {
  switch (cfg.kind) {
    case OptimizerKind::spsa: return spsa(cost, start, cfg, rng);
    case OptimizerKind::nelder_mead: return nelder_mead(cost, start, cfg);
    case OptimizerKind::quasi_newton: return quasi_newton(cost, start, cfg);
  }
  fail(ErrorCode::invalid_argument, "unknown optimizer kind");
}

}  // namespace qvlab
