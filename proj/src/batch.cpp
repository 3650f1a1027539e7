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

#include <atomic>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "qvlab/bench.hpp"
#include "qvlab/error.hpp"

namespace qvlab {

namespace {

struct Prepared {
  const BatchInstance* source = nullptr;
  std::optional<SpectrumReport> spectrum;
  std::unique_ptr<EnergyLevels> levels;
  std::string error;
};

struct Task {
  std::size_t prepared = 0;
  std::size_t run_cell = 0;
  std::size_t slot = 0;
};

std::string describe(const Error& e) { return std::string(to_string(e.code())) + ": " + e.what(); }

}  // namespace

ResultStore run_batch(const ExperimentSpec& spec, int workers) {
  spec.validate();
  const std::vector<BatchInstance> instances = select_instances(spec);
  const std::vector<RunCell> cells = spec.run_cells();

  std::vector<Prepared> prepared(instances.size());
  for (std::size_t k = 0; k < instances.size(); ++k) {
    prepared[k].source = &instances[k];
    try {
      prepared[k].spectrum = brute_force_spectrum(instances[k].instance);
      prepared[k].levels = std::make_unique<EnergyLevels>(instances[k].instance);
    } catch (const Error& e) {
      prepared[k].error = describe(e) + " [instance seed " + std::to_string(instances[k].instance.seed()) + "]";
    }
  }

  // Slots are laid out by (graph cell, run cell, instance index).
  std::vector<std::size_t> cell_start(spec.edge_counts.size() + 1, 0);
  for (const BatchInstance& b : instances) ++cell_start[b.graph_cell + 1];
  std::vector<std::size_t> per_graph(cell_start.begin() + 1, cell_start.end());
  std::size_t offset = 0;
  std::vector<std::size_t> graph_offset(spec.edge_counts.size());
  for (std::size_t c = 0; c < spec.edge_counts.size(); ++c) {
    graph_offset[c] = offset;
    offset += per_graph[c] * cells.size();
  }

  std::vector<Task> tasks;
  tasks.reserve(offset);
  for (std::size_t k = 0; k < prepared.size(); ++k) {
    const BatchInstance& b = instances[k];
    for (std::size_t r = 0; r < cells.size(); ++r)
      tasks.push_back({k, r, graph_offset[b.graph_cell] + r * per_graph[b.graph_cell] + b.index});
  }

  ResultStore store;
  store.spec = spec;
  store.results.resize(tasks.size());

  auto execute = [&](const Task& t) {
    const Prepared& p = prepared[t.prepared];
    const BatchInstance& b = *p.source;
    const RunCell& cell = cells[t.run_cell];
    const std::uint64_t run_seed = derive_seed(b.instance.seed(), static_cast<std::uint32_t>(t.run_cell), 7);
    InstanceResult r;
    if (!p.error.empty()) {
      r = failed_result(b.instance, cell, run_seed, p.error);
    } else {
      try {
        r = run_instance(b.instance, *p.spectrum, *p.levels, cell, spec.settings, run_seed);
      } catch (const Error& e) {
        r = failed_result(b.instance, cell, run_seed, describe(e));
      }
    }
    r.graph_cell = b.graph_cell;
    r.cell_index = static_cast<std::size_t>(b.graph_cell) * cells.size() + t.run_cell;
    r.instance_index = b.index;
    store.results[t.slot] = std::move(r);
  };

  const int pool = std::max(1, workers);
  std::atomic<std::size_t> next{0};
  std::exception_ptr unexpected;
  std::atomic<bool> stop{false};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size() && !stop; k = next++) {
      try {
        execute(tasks[k]);
      } catch (...) {
        unexpected = std::current_exception();
        stop = true;
      }
    }
  };
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < pool; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (unexpected) std::rethrow_exception(unexpected);

  for (const InstanceResult& r : store.results)
    if (!r.ok()) ++store.failures;
  return store;
}

std::vector<AggregateResult> aggregate_cells(const ResultStore& store, const AggregateOptions& options) {
  std::vector<AggregateResult> out;
  std::size_t k = 0;
  while (k < store.results.size()) {
    std::vector<const InstanceResult*> group;
    const std::size_t cell = store.results[k].cell_index;
    for (; k < store.results.size() && store.results[k].cell_index == cell; ++k) group.push_back(&store.results[k]);
    const InstanceResult& head = *group.front();
    out.push_back(aggregate("m" + std::to_string(store.spec.edge_counts[head.graph_cell]) + "/" + head.cell_label,
                            group, options));
  }
  return out;
}

}  // namespace qvlab
