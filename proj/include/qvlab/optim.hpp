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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "qvlab/qubo.hpp"

namespace qvlab {

using Objective = std::function<double(std::span<const double>)>;

enum class OptimizerKind { spsa, nelder_mead, quasi_newton };

std::string_view to_string(OptimizerKind kind);
OptimizerKind optimizer_from_string(std::string_view name);

struct SpsaSettings {
  double a = 0.0;  // <= 0: calibrate from the first gradient estimate
  double c = 0.1;
  double alpha = 0.602;
  double gamma = 0.101;
  double stability = -1.0;  // A; < 0 means 0.1 * max_iterations
  double target_first_step = 0.1;
  int calibration_iterations = 10;  // `a` follows the mean |difference| over these
};

struct NelderMeadSettings {
  double initial_step = 0.05;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct QuasiNewtonSettings {
  double fd_step = 1e-6;
  double gradient_tolerance = 1e-6;
  double armijo = 1e-4;
  int max_halvings = 40;
  // Doublings tried after an immediately accepted step once the last update
  // met non-positive curvature, where BFGS steps stay too short.
  int max_doublings = 20;
};

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::quasi_newton;
  int max_iterations = 1000;
  double ftol = 1e-6;
  int patience = 1;
  SpsaSettings spsa;
  NelderMeadSettings nelder_mead;
  QuasiNewtonSettings quasi_newton;

  void validate() const;

  /// Defaults per kind and evaluation mode (exact vs sampled cost).
  static OptimizerConfig defaults(OptimizerKind kind, bool stochastic_cost);
};

enum class Termination { converged, max_iterations };

std::string_view to_string(Termination t);

struct OptimizationTrace {
  std::vector<double> best_params;
  double best_cost = 0.0;
  /// Last iterate; differs from best_params for SPSA, whose best point is
  /// chosen among noisy evaluations.
  std::vector<double> final_params;
  std::uint64_t evaluations = 0;
  int iterations = 0;
  std::vector<double> cost_history;  // running best cost after each iteration
  Termination terminated_by = Termination::max_iterations;
};

/// Simultaneous-perturbation stochastic approximation. One evaluation at the
/// start point, two per iteration and one at the final iterate.
OptimizationTrace spsa(const Objective& cost, std::span<const double> start, const OptimizerConfig& cfg,
                       Rng& rng);

/// Downhill simplex; the initial simplex adds `initial_step` to each
/// coordinate in turn.
OptimizationTrace nelder_mead(const Objective& cost, std::span<const double> start,
                              const OptimizerConfig& cfg);

/// BFGS on central finite-difference gradients with Armijo backtracking.
OptimizationTrace quasi_newton(const Objective& cost, std::span<const double> start,
                               const OptimizerConfig& cfg);

/// Central-difference gradient; costs 2*d evaluations.
std::vector<double> finite_difference_gradient(const Objective& cost, std::span<const double> x, double step);

OptimizationTrace optimize(const Objective& cost, std::span<const double> start, const OptimizerConfig& cfg,
                           Rng& rng);

}  // namespace qvlab
