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

#include <chrono>
#include <cstdio>
#include <string>

#include "qvlab/bench.hpp"
#include "qvlab/error.hpp"

namespace qvlab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint32_t stream, std::uint32_t index) {
  const std::uint64_t counter = (static_cast<std::uint64_t>(stream) << 32) | index;
  return mix64(master + counter);
}

std::uint32_t name_tag(std::string_view name) {
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 16777619u;
  }
  return h;
}

std::string AnsatzChoice::label() const {
  if (layers == 0) return "product";
  return std::string(to_string(entanglement)) + "-L" + std::to_string(layers);
}

OptimizerConfig OptimizerOverrides::apply(OptimizerConfig cfg) const {
  if (max_iterations) cfg.max_iterations = *max_iterations;
  if (ftol) cfg.ftol = *ftol;
  if (patience) cfg.patience = *patience;
  if (spsa_a) cfg.spsa.a = *spsa_a;
  if (spsa_c) cfg.spsa.c = *spsa_c;
  if (spsa_target_first_step) cfg.spsa.target_first_step = *spsa_target_first_step;
  return cfg;
}

std::string RunCell::cost_label() const { return rho == 1.0 ? "VQE" : "CVaR-VQE"; }

std::string RunCell::label() const {
  char rho_text[32];
  std::snprintf(rho_text, sizeof rho_text, "%g", rho);
  return ansatz.label() + "/" + cost_label() + "(rho=" + rho_text + ")/" +
         (shots == 0 ? std::string("exact") : std::to_string(shots) + "shots") + "/" +
         std::string(to_string(optimizer));
}

VariationalObjective::VariationalObjective(const EnergyLevels& levels, const AnsatzSpec& spec,
                                           CostConfig cost, std::uint64_t noise_seed)
    : levels_(levels), spec_(spec), circuit_(spec), cost_(cost), noise_(noise_seed), state_(spec.n) {
  cost_.validate();
  if (levels.energy_table().size() != std::size_t{1} << spec.n)
    fail(ErrorCode::dimension_mismatch, "ansatz width does not match instance");
}

void VariationalObjective::prepare(std::span<const double> theta) {
  if (theta.size() != spec_.parameter_count())
    fail(ErrorCode::dimension_mismatch, "parameter count does not match ansatz");
  if (spec_.layers == 0) {
    product_ = ProductState(theta);
    product_.probabilities_into(probs_);
  } else {
    circuit_.evolve_into(theta, state_);
    state_.probabilities_into(probs_);
  }
}

double VariationalObjective::operator()(std::span<const double> theta) {
  if (cost_.exact()) return exact(theta);
  if (spec_.layers == 0) {
    if (theta.size() != spec_.parameter_count())
      fail(ErrorCode::dimension_mismatch, "parameter count does not match ansatz");
    product_ = ProductState(theta);
    sample_counts(product_, cost_.shots, noise_, counts_);
  } else {
    prepare(theta);
    sample_counts(probs_, cost_.shots, noise_, counts_);
  }
  return levels_.sampled_cost(counts_, cost_.shots, cost_.rho, count_scratch_);
}

double VariationalObjective::exact(std::span<const double> theta) {
  prepare(theta);
  levels_.distribution_into(probs_, dist_, level_scratch_);
  return exact_cost(dist_, cost_.rho);
}

std::vector<double> VariationalObjective::probabilities(std::span<const double> theta) {
  prepare(theta);
  return probs_;
}

SolveOutcome solve(const QuboInstance& inst, const SpectrumReport& spectrum, const EnergyLevels& levels,
                   const RunCell& cell, const RunSettings& settings, std::uint64_t run_seed) {
  SolveOutcome out;
  Rng ansatz_rng(derive_seed(run_seed, 1, 0));
  out.ansatz = build_ansatz(inst, cell.ansatz.entanglement, cell.ansatz.layers, ansatz_rng);

  ParameterVector start;
  if (settings.random_perturbation) {
    Rng init_rng(derive_seed(run_seed, 4, 0));
    start = init_params_random(out.ansatz, settings.perturbation, init_rng);
  } else {
    start = init_params(out.ansatz, settings.perturbation);
  }

  const CostConfig cost{cell.rho, cell.shots};
  VariationalObjective objective(levels, out.ansatz, cost, derive_seed(run_seed, 2, 0));
  out.optimizer = settings.overrides.apply(OptimizerConfig::defaults(cell.optimizer, !cost.exact()));
  Rng optimizer_rng(derive_seed(run_seed, 3, 0));
  const Objective f = [&objective](std::span<const double> theta) { return objective(theta); };
  out.trace = optimize(f, start.values(), out.optimizer, optimizer_rng);

  // A sampled best value is a selection among noisy draws; report the last
  // iterate instead.
  out.reported_params = cost.exact() ? out.trace.best_params : out.trace.final_params;
  out.probabilities = objective.probabilities(out.reported_params);
  out.overlap = overlap_with_ground(out.probabilities, spectrum);
  out.success = success(out.overlap, settings.beta);
  out.final_cost = objective.exact(out.reported_params);
  return out;
}

namespace {

InstanceResult blank_result(const QuboInstance& inst, const RunCell& cell, std::uint64_t run_seed) {
  InstanceResult r;
  r.ansatz = cell.ansatz;
  r.rho = cell.rho;
  r.shots = cell.shots;
  r.optimizer = cell.optimizer;
  r.cell_label = cell.label();
  r.instance_seed = inst.seed();
  r.run_seed = run_seed;
  r.n = inst.n();
  r.edges = static_cast<int>(inst.edge_count());
  r.density = inst.n() >= 2 ? inst.density() : 0.0;
  return r;
}

[[noreturn]] void rethrow_with_seed(const Error& e, const QuboInstance& inst) {
  throw Error(e.code(), std::string(e.what()) + " [instance seed " + std::to_string(inst.seed()) + "]");
}

}  // namespace

InstanceResult run_instance(const QuboInstance& inst, const SpectrumReport& spectrum,
                            const EnergyLevels& levels, const RunCell& cell, const RunSettings& settings,
                            std::uint64_t run_seed) {
  InstanceResult r = blank_result(inst, cell, run_seed);
  r.hamming_bits = spectrum.min_hamming_bits;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const SolveOutcome out = solve(inst, spectrum, levels, cell, settings, run_seed);
    r.success = out.success;
    r.overlap = out.overlap;
    r.evaluations = out.trace.evaluations;
    r.iterations = out.trace.iterations;
    r.final_cost = out.final_cost;
    r.terminated_by = std::string(to_string(out.trace.terminated_by));
  } catch (const Error& e) {
    rethrow_with_seed(e, inst);
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

InstanceResult failed_result(const QuboInstance& inst, const RunCell& cell, std::uint64_t run_seed,
                             std::string error) {
  if (error.empty()) fail(ErrorCode::invalid_argument, "failure record needs an error message");
  InstanceResult r = blank_result(inst, cell, run_seed);
  r.error = std::move(error);
  return r;
}

InstanceResult run_instance(const QuboInstance& inst, const RunCell& cell, const RunSettings& settings,
                            std::uint64_t run_seed) {
  try {
    const SpectrumReport spectrum = brute_force_spectrum(inst);
    const EnergyLevels levels(inst);
    return run_instance(inst, spectrum, levels, cell, settings, run_seed);
  } catch (const Error& e) {
    if (std::string_view(e.what()).find("[instance seed") != std::string_view::npos) throw;
    rethrow_with_seed(e, inst);
  }
}

}  // namespace qvlab
