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

#include "qvlab/presets.hpp"

#include "qvlab/error.hpp"

namespace qvlab {

namespace {

constexpr AnsatzChoice kProduct{Entanglement::none, 0};

ExperimentSpec base(std::string name) {
  ExperimentSpec s;
  s.name = std::move(name);
  s.n_qubits = 12;
  s.graph_kind = GraphKind::uniform_random;
  s.n_instances = 100;
  s.master_seed = 20211;
  return s;
}

// Optimizer dichotomy: stochastic vs finite-difference gradients, with and
// without shot noise.
ExperimentSpec fig3() {
  ExperimentSpec s = base("fig3-desk");
  s.n_qubits = 9;
  s.edge_counts = {9};
  s.ansatze = {{Entanglement::linear, 1}};
  s.rhos = {0.1};
  s.shots = {3000, 0};
  s.optimizers = {{OptimizerKind::spsa}, {OptimizerKind::quasi_newton}};
  return s;
}

ExperimentSpec fig5() {
  ExperimentSpec s = base("fig5-desk");
  s.edge_counts = {3, 17, 59};
  s.ansatze = {kProduct, {Entanglement::linear, 3}};
  s.rhos = {1.0, 0.1};
  return s;
}

ExperimentSpec fig7() {
  ExperimentSpec s = base("fig7-desk");
  s.edge_counts = {17, 59};
  s.ansatze = {kProduct};
  for (Entanglement e : {Entanglement::linear, Entanglement::compatible})
    for (int l = 1; l <= 3; ++l) s.ansatze.push_back({e, l});
  s.rhos = {0.1};
  return s;
}

ExperimentSpec fig8() {
  ExperimentSpec s = base("fig8-desk");
  s.edge_counts = {3, 17, 59};
  s.ansatze = {kProduct, {Entanglement::compatible, 1}};
  s.rhos = {0.1};
  s.shots = {3000, 9000};
  s.optimizers = {{OptimizerKind::spsa}};
  return s;
}

ExperimentSpec fig9() {
  ExperimentSpec s = base("fig9-desk");
  s.edge_counts = {59};
  s.ansatze = {kProduct, {Entanglement::compatible, 1}};
  s.rhos = {0.1};
  s.selection = {SelectionMode::stratified_value, 15, 60000};
  return s;
}

ExperimentSpec table1() {
  ExperimentSpec s = base("table1-desk");
  s.edge_counts = {59};
  s.ansatze = {kProduct, {Entanglement::compatible, 1}};
  s.rhos = {0.1};
  s.shots = {3000, 9000, 0};
  s.optimizers = {{OptimizerKind::spsa, EvaluationFilter::shots},
                  {OptimizerKind::quasi_newton, EvaluationFilter::exact}};
  s.selection = {SelectionMode::stratified_bin, 50, 60000};
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig3-desk", "fig5-desk", "fig7-desk", "fig8-desk", "fig9-desk", "table1-desk"};
}

ExperimentSpec preset(std::string_view name) {
  ExperimentSpec s;
  if (name == "fig3-desk")
    s = fig3();
  else if (name == "fig5-desk")
    s = fig5();
  else if (name == "fig7-desk")
    s = fig7();
  else if (name == "fig8-desk")
    s = fig8();
  else if (name == "fig9-desk")
    s = fig9();
  else if (name == "table1-desk")
    s = table1();
  else
    fail(ErrorCode::invalid_argument, "unknown preset '" + std::string(name) + "'");
  s.validate();
  return s;
}

}  // namespace qvlab
