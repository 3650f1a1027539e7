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
#include <cmath>

#include "optim_detail.hpp"
#include "qvlab/optim.hpp"

namespace qvlab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

OptimizationTrace quasi_newton(const Objective& cost, std::span<const double> start,
                               const OptimizerConfig& cfg) {
  cfg.validate();
  const QuasiNewtonSettings& s = cfg.quasi_newton;
  detail::CountingObjective f(cost);
  detail::ChangeMonitor monitor(cfg.ftol, cfg.patience);
  const Objective counted = [&f](std::span<const double> x) { return f(x); };
  const std::size_t d = start.size();

  std::vector<double> x(start.begin(), start.end());
  double fx = f(x);
  monitor.update(fx);
  std::vector<double> g = finite_difference_gradient(counted, x, s.fd_step);

  // Row-major inverse Hessian approximation.
  std::vector<double> h(d * d, 0.0);
  auto reset_identity = [&](double scale) {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i) h[i * d + i] = scale;
  };
  reset_identity(1.0);
  bool scaled = false;
  bool flat_curvature = false;

  std::vector<double> dir(d), x_new(d), step(d), dg(d), hy(d);
  OptimizationTrace trace;
  trace.terminated_by = Termination::max_iterations;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (max_abs(g) < s.gradient_tolerance) {
      trace.terminated_by = Termination::converged;
      break;
    }
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc -= h[i * d + j] * g[j];
      dir[i] = acc;
    }
    double slope = dot(g, dir);
    if (!(slope < 0.0)) {
      reset_identity(1.0);
      scaled = false;
      for (std::size_t i = 0; i < d; ++i) dir[i] = -g[i];
      slope = dot(g, dir);
    }

    // Before any curvature information, cap the first trial step at unit length.
    double alpha = scaled ? 1.0 : std::min(1.0, 1.0 / max_abs(dir));
    bool accepted = false;
    int halvings = 0;
    double f_new = fx;
    for (; halvings <= s.max_halvings; ++halvings) {
      for (std::size_t i = 0; i < d; ++i) x_new[i] = x[i] + alpha * dir[i];
      f_new = f(x_new);
      if (f_new <= fx + s.armijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (accepted && halvings == 0 && flat_curvature) {
      std::vector<double> x_far(d);
      for (int doubling = 0; doubling < s.max_doublings; ++doubling) {
        const double far = 2.0 * alpha;
        for (std::size_t i = 0; i < d; ++i) x_far[i] = x[i] + far * dir[i];
        const double f_far = f(x_far);
        if (!(f_far < f_new && f_far <= fx + s.armijo * far * slope)) break;
        alpha = far;
        f_new = f_far;
        x_new.swap(x_far);
      }
    }
    if (!accepted) {
      // No sufficient decrease along a descent direction: local structure.
      trace.terminated_by = Termination::converged;
      break;
    }

    std::vector<double> g_new = finite_difference_gradient(counted, x_new, s.fd_step);
    for (std::size_t i = 0; i < d; ++i) {
      step[i] = x_new[i] - x[i];
      dg[i] = g_new[i] - g[i];
    }
    const double sy = dot(step, dg);
    const double yy = dot(dg, dg);
    flat_curvature = !(sy > 1e-12 * std::sqrt(dot(step, step) * yy));
    if (!flat_curvature) {
      if (!scaled) {
        reset_identity(sy / yy);
        scaled = true;
      }
      // H+ = (I - r s y^T) H (I - r y s^T) + r s s^T, r = 1/(s.y)
      const double r = 1.0 / sy;
      for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += h[i * d + j] * dg[j];
        hy[i] = acc;
      }
      const double yhy = dot(dg, hy);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          h[i * d + j] += (1.0 + r * yhy) * r * step[i] * step[j] - r * (hy[i] * step[j] + step[i] * hy[j]);
    }

    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;
    trace.iterations = it + 1;
    trace.cost_history.push_back(fx);
    if (monitor.update(fx)) {
      trace.terminated_by = Termination::converged;
      break;
    }
  }

  trace.best_params = x;
  trace.final_params = x;
  trace.best_cost = fx;
  trace.evaluations = f.count();
  return trace;
}

}  // namespace qvlab
