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

#include <map>
#include <string>

#include "qvlab/bench.hpp"
#include "qvlab/error.hpp"

namespace qvlab {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorCode::schema, message);
}

}  // namespace

std::string_view to_string(SelectionMode mode) {
  switch (mode) {
    case SelectionMode::all: return "all";
    case SelectionMode::stratified_value: return "stratified-value";
    case SelectionMode::stratified_bin: return "stratified-bin";
  }
  return "all";
}

SelectionMode selection_mode_from_string(std::string_view name) {
  if (name == "all") return SelectionMode::all;
  if (name == "stratified-value") return SelectionMode::stratified_value;
  if (name == "stratified-bin") return SelectionMode::stratified_bin;
  fail(ErrorCode::invalid_argument, "unknown selection mode '" + std::string(name) + "'");
}

std::string_view to_string(EvaluationFilter filter) {
  switch (filter) {
    case EvaluationFilter::any: return "any";
    case EvaluationFilter::exact: return "exact";
    case EvaluationFilter::shots: return "shots";
  }
  return "any";
}

EvaluationFilter evaluation_filter_from_string(std::string_view name) {
  if (name == "any") return EvaluationFilter::any;
  if (name == "exact") return EvaluationFilter::exact;
  if (name == "shots") return EvaluationFilter::shots;
  fail(ErrorCode::invalid_argument, "unknown evaluation filter '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
  require(n_qubits >= 1 && n_qubits <= kMaxEnumerableVariables,
          "n_qubits must be in [1, " + std::to_string(kMaxEnumerableVariables) + "]");
  require(!edge_counts.empty(), "edge_counts must be non-empty");
  const int max_edges = n_qubits * (n_qubits - 1) / 2;
  for (int m : edge_counts)
    require(m >= 0 && m <= max_edges, "edge count " + std::to_string(m) + " out of range");
  require(n_instances >= 1, "n_instances must be >= 1");
  require(!ansatze.empty(), "ansatze must be non-empty");
  for (const AnsatzChoice& a : ansatze) {
    require(a.layers >= 0, "layers must be non-negative");
    require(!(a.entanglement == Entanglement::none && a.layers > 0), "product ansatz cannot have layers");
    if (a.entanglement == Entanglement::compatible)
      for (int m : edge_counts) require(m > 0, "compatible entanglement needs edges in every graph cell");
  }
  require(!rhos.empty(), "rhos must be non-empty");
  for (double rho : rhos) require(rho > 0.0 && rho <= 1.0, "rho must be in (0, 1]");
  require(!shots.empty(), "shots must be non-empty");
  require(!optimizers.empty(), "optimizers must be non-empty");
  for (std::uint64_t k : shots) {
    bool covered = false;
    for (const OptimizerChoice& o : optimizers) covered = covered || o.accepts(k);
    require(covered, "no optimizer applies to shots=" + std::to_string(k));
  }
  require(settings.beta > 0.0 && settings.beta < 1.0, "beta must be in (0, 1)");
  require(settings.perturbation >= 0.0, "perturbation must be non-negative");
  if (selection.mode != SelectionMode::all) {
    require(selection.quota >= 1, "stratified selection needs quota >= 1");
    require(selection.max_candidates >= 1, "max_candidates must be >= 1");
  }
  for (std::size_t k = 0; k < hardness_edges.size(); ++k) {
    require(hardness_edges[k] > 0.0 && hardness_edges[k] <= 1.0, "hardness edges must lie in (0, 1]");
    if (k > 0) require(hardness_edges[k] > hardness_edges[k - 1], "hardness edges must increase");
  }
  OptimizerConfig probe = settings.overrides.apply(OptimizerConfig::defaults(OptimizerKind::spsa, true));
  try {
    probe.validate();
  } catch (const Error& e) {
    fail(ErrorCode::schema, std::string("optimizer overrides: ") + e.what());
  }
}

std::vector<RunCell> ExperimentSpec::run_cells() const {
  std::vector<RunCell> cells;
  for (const AnsatzChoice& a : ansatze)
    for (double rho : rhos)
      for (std::uint64_t k : shots)
        for (const OptimizerChoice& opt : optimizers)
          if (opt.accepts(k)) cells.push_back({a, rho, k, opt.kind});
  return cells;
}

std::vector<BatchInstance> select_instances(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<BatchInstance> out;
  const std::uint32_t tag = name_tag(spec.name);
  for (std::size_t c = 0; c < spec.edge_counts.size(); ++c) {
    const std::uint32_t stream = tag + static_cast<std::uint32_t>(c);
    const int m = spec.edge_counts[c];
    if (spec.selection.mode == SelectionMode::all) {
      for (int i = 0; i < spec.n_instances; ++i)
        out.push_back({static_cast<int>(c), static_cast<std::size_t>(i),
                       QuboInstance::generate(spec.n_qubits, m, spec.graph_kind,
                                              derive_seed(spec.master_seed, stream, static_cast<std::uint32_t>(i)))});
      continue;
    }

    // Keep candidates in draw order until each hardness bucket holds `quota`.
    const int buckets = spec.selection.mode == SelectionMode::stratified_value
                            ? spec.n_qubits + 1
                            : static_cast<int>(spec.hardness_edges.size()) + 1;
    std::vector<int> filled(buckets, 0);
    std::size_t index = 0;
    for (int j = 0; j < spec.selection.max_candidates; ++j) {
      QuboInstance inst = QuboInstance::generate(spec.n_qubits, m, spec.graph_kind,
                                                 derive_seed(spec.master_seed, stream, static_cast<std::uint32_t>(j)));
      int bits = 0;
      try {
        bits = brute_force_spectrum(inst).min_hamming_bits;
      } catch (const Error&) {
        continue;
      }
      const int bucket = spec.selection.mode == SelectionMode::stratified_value
                             ? bits
                             : hardness_bin(static_cast<double>(bits) / spec.n_qubits, spec.hardness_edges);
      if (filled[bucket] >= spec.selection.quota) continue;
      ++filled[bucket];
      out.push_back({static_cast<int>(c), index++, std::move(inst)});
      bool done = true;
      for (int b = (spec.selection.mode == SelectionMode::stratified_value ? 1 : 0); b < buckets; ++b)
        done = done && filled[b] >= spec.selection.quota;
      if (done) break;
    }
  }
  return out;
}

}  // namespace qvlab
