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

#include "qvlab/qvlab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "qvlab/bench.hpp"
#include "qvlab/error.hpp"
#include "qvlab/io.hpp"
#include "qvlab/presets.hpp"
#include "qvlab/report.hpp"

struct qvl_instance {
  qvlab::QuboInstance value;
};

struct qvl_spectrum {
  qvlab::SpectrumReport value;
};

struct qvl_experiment {
  qvlab::ExperimentSpec value;
};

struct qvl_store {
  qvlab::ResultStore value;
};

namespace {

thread_local std::string last_error;

qvl_status status_of(qvlab::ErrorCode code) {
  switch (code) {
    case qvlab::ErrorCode::invalid_argument: return QVL_ERR_INVALID_ARGUMENT;
    case qvlab::ErrorCode::dimension_mismatch: return QVL_ERR_DIMENSION_MISMATCH;
    case qvlab::ErrorCode::infeasible_graph: return QVL_ERR_INFEASIBLE_GRAPH;
    case qvlab::ErrorCode::degenerate_spectrum: return QVL_ERR_DEGENERATE_SPECTRUM;
    case qvlab::ErrorCode::too_large: return QVL_ERR_TOO_LARGE;
    case qvlab::ErrorCode::non_finite: return QVL_ERR_NON_FINITE;
    case qvlab::ErrorCode::io: return QVL_ERR_IO;
    case qvlab::ErrorCode::parse: return QVL_ERR_PARSE;
    case qvlab::ErrorCode::schema: return QVL_ERR_SCHEMA;
  }
  return QVL_ERR_INTERNAL;
}

template <class F>
qvl_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return QVL_OK;
  } catch (const qvlab::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QVL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QVL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QVL_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) qvlab::fail(qvlab::ErrorCode::invalid_argument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::vector<std::string> collect(const char* const* items, size_t n) {
  std::vector<std::string> out;
  require(n == 0 || items, "override list is null");
  for (size_t k = 0; k < n; ++k) {
    require(items[k], "override entry is null");
    out.emplace_back(items[k]);
  }
  return out;
}

qvlab::AggregateOptions aggregate_options(const qvlab::ExperimentSpec& spec) {
  qvlab::AggregateOptions o;
  o.seed = spec.master_seed;
  return o;
}

}  // namespace

extern "C" {

const char* qvl_version(void) { return "0.1.0"; }

const char* qvl_status_name(qvl_status status) {
  switch (status) {
    case QVL_OK: return "ok";
    case QVL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case QVL_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case QVL_ERR_INFEASIBLE_GRAPH: return "infeasible-graph";
    case QVL_ERR_DEGENERATE_SPECTRUM: return "degenerate-spectrum";
    case QVL_ERR_TOO_LARGE: return "too-large";
    case QVL_ERR_NON_FINITE: return "non-finite";
    case QVL_ERR_IO: return "io";
    case QVL_ERR_PARSE: return "parse";
    case QVL_ERR_SCHEMA: return "schema";
    case QVL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* qvl_last_error(void) { return last_error.c_str(); }

void qvl_string_free(char* s) { std::free(s); }

uint64_t qvl_derive_seed(uint64_t master, uint32_t stream, uint32_t index) {
  return qvlab::derive_seed(master, stream, index);
}

qvl_status qvl_instance_generate(int n, int edges, const char* kind, uint64_t seed, qvl_instance** out) {
  return guarded([&] {
    require(out && kind, "null argument");
    *out = new qvl_instance{qvlab::QuboInstance::generate(n, edges, qvlab::graph_kind_from_string(kind), seed)};
  });
}

qvl_status qvl_instance_from_json(const char* text, qvl_instance** out) {
  return guarded([&] {
    require(out && text, "null argument");
    *out = new qvl_instance{qvlab::instance_from_json(text)};
  });
}

qvl_status qvl_instance_load(const char* path, qvl_instance** out) {
  return guarded([&] {
    require(out && path, "null argument");
    *out = new qvl_instance{qvlab::instance_from_json(qvlab::read_text_file(path))};
  });
}

qvl_status qvl_instance_save(const qvl_instance* inst, const char* path) {
  return guarded([&] {
    require(inst && path, "null argument");
    qvlab::write_text_file(path, qvlab::instance_to_json(inst->value));
  });
}

qvl_status qvl_instance_to_json(const qvl_instance* inst, char** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = dup(qvlab::instance_to_json(inst->value));
  });
}

void qvl_instance_free(qvl_instance* inst) { delete inst; }

int qvl_instance_n(const qvl_instance* inst) { return inst ? inst->value.n() : 0; }
size_t qvl_instance_edge_count(const qvl_instance* inst) { return inst ? inst->value.edge_count() : 0; }
uint64_t qvl_instance_seed(const qvl_instance* inst) { return inst ? inst->value.seed() : 0; }

qvl_status qvl_instance_density(const qvl_instance* inst, double* out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = inst->value.density();
  });
}

qvl_status qvl_instance_energy(const qvl_instance* inst, const uint8_t* bits, size_t len, int64_t* out) {
  return guarded([&] {
    require(inst && out && (bits || len == 0), "null argument");
    *out = inst->value.energy(std::span<const std::uint8_t>(bits, len));
  });
}

qvl_status qvl_resolve_edge_count(int n, double density, int* out) {
  return guarded([&] {
    require(out, "null argument");
    require(n >= 2, "density needs n >= 2");
    require(density >= 0.0 && density <= 1.0, "density must lie in [0, 1]");
    *out = static_cast<int>(std::lround(density * (n * (n - 1) / 2)));
  });
}

qvl_status qvl_spectrum_compute(const qvl_instance* inst, qvl_spectrum** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = new qvl_spectrum{qvlab::brute_force_spectrum(inst->value)};
  });
}

void qvl_spectrum_free(qvl_spectrum* spectrum) { delete spectrum; }

int64_t qvl_spectrum_ground_energy(const qvl_spectrum* s) { return s ? s->value.ground_energy : 0; }
int64_t qvl_spectrum_first_excited_energy(const qvl_spectrum* s) { return s ? s->value.first_excited_energy : 0; }
size_t qvl_spectrum_ground_degeneracy(const qvl_spectrum* s) { return s ? s->value.ground_manifold.size() : 0; }
size_t qvl_spectrum_first_excited_degeneracy(const qvl_spectrum* s) {
  return s ? s->value.first_excited_manifold.size() : 0;
}
int qvl_spectrum_hamming_bits(const qvl_spectrum* s) { return s ? s->value.min_hamming_bits : 0; }
double qvl_spectrum_hamming_distance(const qvl_spectrum* s) { return s ? s->value.min_hamming_distance() : 0.0; }

qvl_status qvl_spectrum_to_json(const qvl_spectrum* spectrum, char** out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    *out = dup(qvlab::spectrum_to_json(spectrum->value));
  });
}

void qvl_solve_options_init(qvl_solve_options* o) {
  if (!o) return;
  o->entanglement = "none";
  o->layers = 0;
  o->rho = qvlab::kDefaultRho;
  o->shots = 0;
  o->optimizer = "quasi-newton";
  o->beta = qvlab::kDefaultBeta;
  o->perturbation = 1e-2;
  o->random_perturbation = 0;
  o->seed = 0;
  o->max_iterations = 0;
  o->history_stride = 1;
  o->top_states = 4;
}

qvl_status qvl_solve(const qvl_instance* inst, const qvl_solve_options* options, char** report, int* success) {
  return guarded([&] {
    require(inst && options && report && options->entanglement && options->optimizer, "null argument");
    qvlab::RunCell cell;
    cell.ansatz = {qvlab::entanglement_from_string(options->entanglement), options->layers};
    if (cell.ansatz.layers == 0) cell.ansatz.entanglement = qvlab::Entanglement::none;
    cell.rho = options->rho;
    cell.shots = options->shots;
    cell.optimizer = qvlab::optimizer_from_string(options->optimizer);
    qvlab::RunSettings settings;
    settings.beta = options->beta;
    settings.perturbation = options->perturbation;
    settings.random_perturbation = options->random_perturbation != 0;
    if (options->max_iterations > 0) settings.overrides.max_iterations = options->max_iterations;
    require(settings.beta > 0.0 && settings.beta < 1.0, "beta must be in (0, 1)");

    const qvlab::SpectrumReport spectrum = qvlab::brute_force_spectrum(inst->value);
    const qvlab::EnergyLevels levels(inst->value);
    const qvlab::SolveOutcome outcome = qvlab::solve(inst->value, spectrum, levels, cell, settings, options->seed);
    *report = dup(qvlab::solve_report_to_json(inst->value, spectrum, cell, settings, options->seed, outcome,
                                              options->top_states, options->history_stride));
    if (success) *success = outcome.success;
  });
}

qvl_status qvl_experiment_from_json(const char* text, const char* const* overrides, size_t n_overrides,
                                    qvl_experiment** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new qvl_experiment{qvlab::experiment_from_json(text, collect(overrides, n_overrides))};
  });
}

qvl_status qvl_experiment_preset(const char* name, const char* const* overrides, size_t n_overrides,
                                 qvl_experiment** out) {
  return guarded([&] {
    require(name && out, "null argument");
    const std::string doc = qvlab::experiment_to_json(qvlab::preset(name));
    *out = new qvl_experiment{qvlab::experiment_from_json(doc, collect(overrides, n_overrides))};
  });
}

qvl_status qvl_experiment_to_json(const qvl_experiment* experiment, char** out) {
  return guarded([&] {
    require(experiment && out, "null argument");
    *out = dup(qvlab::experiment_to_json(experiment->value));
  });
}

void qvl_experiment_free(qvl_experiment* experiment) { delete experiment; }

qvl_status qvl_preset_names(char** out) {
  return guarded([&] {
    require(out, "null argument");
    std::string s;
    for (const std::string& name : qvlab::preset_names()) s += name + "\n";
    *out = dup(s);
  });
}

qvl_status qvl_bench_run(const qvl_experiment* experiment, int workers, qvl_store** out) {
  return guarded([&] {
    require(experiment && out, "null argument");
    require(workers >= 1, "workers must be >= 1");
    *out = new qvl_store{qvlab::run_batch(experiment->value, workers)};
  });
}

qvl_status qvl_store_read(const char* dir, qvl_store** out) {
  return guarded([&] {
    require(dir && out, "null argument");
    *out = new qvl_store{qvlab::read_store(dir)};
  });
}

qvl_status qvl_store_write(const qvl_store* store, const char* dir) {
  return guarded([&] {
    require(store && dir, "null argument");
    qvlab::write_store(store->value, dir, aggregate_options(store->value.spec));
  });
}

qvl_status qvl_store_ndjson(const qvl_store* store, char** out) {
  return guarded([&] {
    require(store && out, "null argument");
    *out = dup(qvlab::results_to_ndjson(store->value));
  });
}

qvl_status qvl_store_aggregate_json(const qvl_store* store, char** out) {
  return guarded([&] {
    require(store && out, "null argument");
    *out = dup(qvlab::aggregate_to_json(store->value, aggregate_options(store->value.spec)));
  });
}

size_t qvl_store_size(const qvl_store* store) { return store ? store->value.results.size() : 0; }
size_t qvl_store_failures(const qvl_store* store) { return store ? store->value.failures : 0; }
void qvl_store_free(qvl_store* store) { delete store; }

qvl_status qvl_report(const qvl_store* store, const char* figure, const char* dir, int svg, char** written) {
  return guarded([&] {
    require(store && dir, "null argument");
    const std::string fig = figure ? std::string(figure) : qvlab::default_figure(store->value.spec);
    const auto files = qvlab::build_report(store->value, fig, aggregate_options(store->value.spec), svg != 0);
    std::string list;
    for (const auto& p : qvlab::write_report(files, dir)) list += p.string() + "\n";
    if (written) *written = dup(list);
  });
}

}  // extern "C"
