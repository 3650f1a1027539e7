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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qvlab/cost.hpp"
#include "qvlab/optim.hpp"
#include "qvlab/qubo.hpp"
#include "qvlab/simulator.hpp"

namespace qvlab {

// ---------------------------------------------------------------------------
// Seeds

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based derivation. For a fixed `master`, distinct (stream, index)
/// pairs with both components below 2^32 map to distinct seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint32_t stream, std::uint32_t index);

/// FNV-1a, used to tag seed streams with an experiment name.
std::uint32_t name_tag(std::string_view name);

// ---------------------------------------------------------------------------
// Single runs

struct AnsatzChoice {
  Entanglement entanglement = Entanglement::none;
  int layers = 0;

  std::string label() const;  // "product", "linear-L3", ...
  friend bool operator==(const AnsatzChoice&, const AnsatzChoice&) = default;
};

// Optional knobs layered on top of OptimizerConfig::defaults().
struct OptimizerOverrides {
  std::optional<int> max_iterations;
  std::optional<double> ftol;
  std::optional<int> patience;
  std::optional<double> spsa_a;
  std::optional<double> spsa_c;
  std::optional<double> spsa_target_first_step;

  OptimizerConfig apply(OptimizerConfig cfg) const;
};

// Everything that varies between cells except the instance.
struct RunCell {
  AnsatzChoice ansatz;
  double rho = kDefaultRho;
  std::uint64_t shots = 0;  // 0: exact
  OptimizerKind optimizer = OptimizerKind::quasi_newton;

  std::string cost_label() const;  // "VQE" for rho = 1, else "CVaR-VQE"
  std::string label() const;
};

struct RunSettings {
  double beta = kDefaultBeta;
  double perturbation = 1e-2;
  bool random_perturbation = false;
  OptimizerOverrides overrides;
};

// Evaluates the configured cost for a given flat parameter vector. Not
// thread-safe: one instance per run.
class VariationalObjective {
 public:
  VariationalObjective(const EnergyLevels& levels, const AnsatzSpec& spec, CostConfig cost,
                       std::uint64_t noise_seed);

  double operator()(std::span<const double> theta);

  /// Noise-free CVaR of the state prepared by `theta`.
  double exact(std::span<const double> theta);
  std::vector<double> probabilities(std::span<const double> theta);

 private:
  void prepare(std::span<const double> theta);

  const EnergyLevels& levels_;
  AnsatzSpec spec_;
  Circuit circuit_;
  CostConfig cost_;
  Rng noise_;
  StateVector state_;
  ProductState product_;
  std::vector<double> probs_;
  std::vector<double> level_scratch_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint64_t> count_scratch_;
  EnergyDistribution dist_;
};

struct SolveOutcome {
  AnsatzSpec ansatz;
  OptimizerConfig optimizer;
  OptimizationTrace trace;
  std::vector<double> reported_params;  // best params (exact) or last iterate (shots)
  std::vector<double> probabilities;
  double overlap = 0.0;
  int success = 0;
  double final_cost = 0.0;  // exact cost of the reported state
};

/// Full variational optimization of one instance against a known spectrum.
SolveOutcome solve(const QuboInstance& inst, const SpectrumReport& spectrum, const EnergyLevels& levels,
                   const RunCell& cell, const RunSettings& settings, std::uint64_t run_seed);

struct InstanceResult {
  std::size_t cell_index = 0;
  std::size_t instance_index = 0;
  std::string cell_label;
  int graph_cell = 0;  // index into the experiment's edge-count list
  AnsatzChoice ansatz;
  double rho = kDefaultRho;
  std::uint64_t shots = 0;
  OptimizerKind optimizer = OptimizerKind::quasi_newton;

  std::uint64_t instance_seed = 0;
  std::uint64_t run_seed = 0;
  int n = 0;
  int edges = 0;
  double density = 0.0;
  std::optional<int> hamming_bits;  // present iff the spectrum oracle ran
  int success = 0;
  double overlap = 0.0;
  std::uint64_t evaluations = 0;
  int iterations = 0;
  double final_cost = 0.0;
  std::string terminated_by;
  double wall_time = 0.0;  // seconds; kept out of the deterministic store
  std::string error;       // empty on success

  bool ok() const { return error.empty(); }
  std::optional<double> d_h() const {
    if (!hamming_bits) return std::nullopt;
    return static_cast<double>(*hamming_bits) / n;
  }
};

/// Computes the spectrum itself; errors propagate as Error with the
/// instance seed in the message.
InstanceResult run_instance(const QuboInstance& inst, const RunCell& cell, const RunSettings& settings,
                            std::uint64_t run_seed);

/// Same, reusing a precomputed spectrum and level table.
InstanceResult run_instance(const QuboInstance& inst, const SpectrumReport& spectrum,
                            const EnergyLevels& levels, const RunCell& cell, const RunSettings& settings,
                            std::uint64_t run_seed);

/// Record for a run that could not be carried out; `error` must be non-empty.
InstanceResult failed_result(const QuboInstance& inst, const RunCell& cell, std::uint64_t run_seed,
                             std::string error);

// ---------------------------------------------------------------------------
// Statistics

struct ConfidenceInterval {
  double lo = 0.0;
  double point = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap of the mean. Needs >= 2 values and >= 1000 resamples.
ConfidenceInterval bootstrap_ci(std::span<const double> values, double level, int resamples, Rng& rng);

double spearman(std::span<const double> x, std::span<const double> y);

// Half-open bins [0, b0), [b0, b1), ..., [b_last, 1].
inline const std::vector<double> kDefaultHardnessEdges = {0.35, 0.75};

int hardness_bin(double d_h, std::span<const double> edges = kDefaultHardnessEdges);
std::string hardness_bin_label(int bin);  // "A", "B", "C", ...

struct AggregateResult {
  std::string key;
  std::size_t count = 0;
  bool empty = true;
  ConfidenceInterval success_rate;
  ConfidenceInterval evaluations;
};

struct AggregateOptions {
  double level = 0.95;
  int resamples = 10000;
  std::uint64_t seed = 0;
};

/// Aggregates a group; failed results are skipped.
AggregateResult aggregate(std::string key, std::span<const InstanceResult* const> results,
                          const AggregateOptions& options);

/// One entry per bin, in bin order; empty bins carry `empty = true`.
std::vector<AggregateResult> bin_by_hardness(std::span<const InstanceResult> results,
                                             std::span<const double> edges, const AggregateOptions& options);

// ---------------------------------------------------------------------------
// Batches

enum class SelectionMode { all, stratified_value, stratified_bin };

std::string_view to_string(SelectionMode mode);
SelectionMode selection_mode_from_string(std::string_view name);

// Restricts an optimizer to exact or sampled cells, so that one experiment
// can pair e.g. SPSA with shot budgets and quasi-Newton with exact costs.
enum class EvaluationFilter { any, exact, shots };

std::string_view to_string(EvaluationFilter filter);
EvaluationFilter evaluation_filter_from_string(std::string_view name);

struct OptimizerChoice {
  OptimizerKind kind = OptimizerKind::quasi_newton;
  EvaluationFilter applies_to = EvaluationFilter::any;

  bool accepts(std::uint64_t shots) const {
    return applies_to == EvaluationFilter::any || (applies_to == EvaluationFilter::exact) == (shots == 0);
  }
};

struct InstanceSelection {
  SelectionMode mode = SelectionMode::all;
  int quota = 0;                 // per d_H value or per bin
  int max_candidates = 100000;   // per graph cell
};

struct ExperimentSpec {
  std::string name = "experiment";
  int n_qubits = 12;
  GraphKind graph_kind = GraphKind::uniform_random;
  std::vector<int> edge_counts;
  int n_instances = 100;  // per graph cell when selection is `all`
  std::vector<AnsatzChoice> ansatze;
  std::vector<double> rhos = {kDefaultRho};
  std::vector<std::uint64_t> shots = {0};
  std::vector<OptimizerChoice> optimizers = {OptimizerChoice{}};
  RunSettings settings;
  InstanceSelection selection;
  std::vector<double> hardness_edges = kDefaultHardnessEdges;
  std::uint64_t master_seed = 0;

  void validate() const;
  std::vector<RunCell> run_cells() const;
};

struct BatchInstance {
  int graph_cell = 0;
  std::size_t index = 0;
  QuboInstance instance;
};

/// Instances used by a batch, grouped by graph cell in index order.
std::vector<BatchInstance> select_instances(const ExperimentSpec& spec);

struct ResultStore {
  ExperimentSpec spec;
  std::vector<InstanceResult> results;  // ordered by (cell, instance index)
  std::size_t failures = 0;
};

/// Runs every (graph cell, run cell, instance) triple on a pool of `workers`
/// threads. The store is independent of the worker count.
ResultStore run_batch(const ExperimentSpec& spec, int workers = 1);

/// Per-cell aggregates in cell order.
std::vector<AggregateResult> aggregate_cells(const ResultStore& store, const AggregateOptions& options);

}  // namespace qvlab
