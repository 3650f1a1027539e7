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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qvlab/bench.hpp"

namespace qvlab {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Instances: {"n", "graph_kind", "seed", "edges": [[i, j, w], ...]}.
std::string instance_to_json(const QuboInstance& inst);
QuboInstance instance_from_json(std::string_view text);

// Manifolds are written as lowercase hex basis indices.
std::string spectrum_to_json(const SpectrumReport& report);

/// Single-run report: configuration echo, trace, and the most likely
/// bitstrings of the final state. `history_stride` > 1 keeps every k-th
/// entry of the cost history (and always the last one).
std::string solve_report_to_json(const QuboInstance& inst, const SpectrumReport& spectrum, const RunCell& cell,
                                 const RunSettings& settings, std::uint64_t seed, const SolveOutcome& outcome,
                                 std::size_t top_states = 4, std::size_t history_stride = 1);

/// Parses an experiment document, applies `key=value` overrides (dotted
/// keys, JSON-typed values with a bare-string fallback) and validates.
/// Unknown keys are schema errors.
ExperimentSpec experiment_from_json(std::string_view text, const std::vector<std::string>& overrides = {});

/// Fully resolved document; parsing it back yields the same experiment.
std::string experiment_to_json(const ExperimentSpec& spec);

/// One InstanceResult per line, without wall_time.
std::string results_to_ndjson(const ResultStore& store);

/// Stable column order; includes wall_time.
std::string results_to_csv(const ResultStore& store);

std::string timings_to_csv(const ResultStore& store);

std::string aggregate_to_json(const ResultStore& store, const AggregateOptions& options);

// Output directory layout of a batch.
inline constexpr const char* kSpecFile = "spec.json";
inline constexpr const char* kResultsFile = "results.ndjson";
inline constexpr const char* kCsvFile = "results.csv";
inline constexpr const char* kTimingsFile = "timings.csv";
inline constexpr const char* kAggregateFile = "aggregate.json";

void write_store(const ResultStore& store, const std::filesystem::path& dir, const AggregateOptions& options);

/// Reads spec.json and results.ndjson (and timings.csv when present).
ResultStore read_store(const std::filesystem::path& dir);

}  // namespace qvlab
