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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qvlab/qvlab.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Thrown for library failures; carries the message already formatted.
struct Failure {
  std::string message;
};

void check(qvl_status status) {
  if (status != QVL_OK) throw Failure{std::string(qvl_status_name(status)) + ": " + qvl_last_error()};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  qvl_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Instance = Handle<qvl_instance, qvl_instance_free>;
using Spectrum = Handle<qvl_spectrum, qvl_spectrum_free>;
using Experiment = Handle<qvl_experiment, qvl_experiment_free>;
using Store = Handle<qvl_store, qvl_store_free>;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Failure{"io: cannot write '" + path.string() + "'"};
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{"io: cannot create '" + dir.string() + "': " + ec.message()};
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

int default_workers() {
  if (const char* env = std::getenv("QVLAB_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

// ---------------------------------------------------------------------------

struct GenOptions {
  int n = 0;
  std::optional<int> edges;
  std::optional<double> density;
  std::string kind = "uniform-random";
  int count = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int resolve_edges(const GenOptions& o, bool quiet) {
  if (o.edges) return *o.edges;
  int edges = 0;
  check(qvl_resolve_edge_count(o.n, *o.density, &edges));
  if (!quiet)
    std::cout << "density " << *o.density << " resolved to " << edges << " edges (density "
              << format("%.6g", 2.0 * edges / (o.n * (o.n - 1.0))) << ")\n";
  return edges;
}

int cmd_gen(const GenOptions& o, bool quiet) {
  const int edges = resolve_edges(o, quiet);
  make_dir(o.out);
  json manifest;
  manifest["n"] = o.n;
  manifest["graph_kind"] = o.kind;
  manifest["edges"] = edges;
  if (o.density) manifest["requested_density"] = *o.density;
  manifest["master_seed"] = o.seed;
  json list = json::array();
  for (int k = 0; k < o.count; ++k) {
    const std::uint64_t seed = qvl_derive_seed(o.seed, 0, static_cast<std::uint32_t>(k));
    Instance inst;
    check(qvl_instance_generate(o.n, edges, o.kind.c_str(), seed, inst.out()));
    char name[32];
    std::snprintf(name, sizeof name, "instance_%04d.json", k);
    check(qvl_instance_save(inst.get(), (fs::path(o.out) / name).string().c_str()));
    double density = 0.0;
    if (o.n >= 2) check(qvl_instance_density(inst.get(), &density));
    list.push_back({{"file", name}, {"seed", seed}, {"density", density}});
  }
  manifest["instances"] = std::move(list);
  write_file(fs::path(o.out) / "manifest.json", manifest.dump(2) + "\n");
  if (!quiet) std::cout << "wrote " << o.count << " instance(s) to " << o.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SolveOptions {
  std::string instance;
  std::string ansatz = "none";
  int layers = 0;
  double rho = 0.1;
  std::uint64_t shots = 0;
  std::string optimizer = "quasi-newton";
  std::uint64_t seed = 0;
  double beta = 0.1;
  int max_iterations = 0;
  std::size_t history_stride = 1;
  std::string out;
};

int cmd_solve(const SolveOptions& o, bool quiet) {
  Instance inst;
  check(qvl_instance_load(o.instance.c_str(), inst.out()));
  qvl_solve_options opts;
  qvl_solve_options_init(&opts);
  opts.entanglement = o.ansatz.c_str();
  opts.layers = o.layers;
  opts.rho = o.rho;
  opts.shots = o.shots;
  opts.optimizer = o.optimizer.c_str();
  opts.seed = o.seed;
  opts.beta = o.beta;
  opts.max_iterations = o.max_iterations;
  opts.history_stride = o.history_stride;
  char* raw = nullptr;
  int success = 0;
  check(qvl_solve(inst.get(), &opts, &raw, &success));
  const std::string text = take(raw);
  if (!o.out.empty()) write_file(o.out, text);
  if (!quiet) {
    const json report = json::parse(text);
    std::cout << report["label"].get<std::string>() << "  " << report["cell"].get<std::string>() << "\n";
    std::cout << "best bitstrings:\n";
    for (const auto& s : report["top_states"])
      std::cout << "  " << s["bits"].get<std::string>() << "  p=" << format("%.6f", s["probability"].get<double>())
                << "  E=" << s["energy"].get<long long>() << "\n";
    std::cout << "ground energy: " << report["ground_energy"].get<long long>() << "\n"
              << "final cost: " << format("%.6g", report["final_cost"].get<double>()) << "\n"
              << "overlap: " << format("%.6f", report["overlap"].get<double>()) << "\n"
              << "evaluations: " << report["evaluations"].get<std::uint64_t>() << "\n"
              << "terminated by: " << report["terminated_by"].get<std::string>() << "\n"
              << "success: " << success << "\n";
  }
  return success ? 0 : 3;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string spec;
  std::string preset;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out;
  int workers = 1;
  bool dry_run = false;
  bool list = false;
};

void print_summary(const std::string& aggregate) {
  const json doc = json::parse(aggregate);
  std::size_t width = 4;
  for (const auto& c : doc["cells"]) width = std::max(width, c["key"].get<std::string>().size());
  std::printf("%-*s %5s  %-24s %-28s\n", static_cast<int>(width), "cell", "n", "success [95% CI]",
              "evaluations [95% CI]");
  for (const auto& c : doc["cells"]) {
    const std::string key = c["key"].get<std::string>();
    if (c["empty"].get<bool>()) {
      std::printf("%-*s %5d  %-24s %-28s\n", static_cast<int>(width), key.c_str(), 0, "empty", "empty");
      continue;
    }
    const auto& s = c["success_rate"];
    const auto& e = c["evaluations"];
    char sbuf[64], ebuf[64];
    std::snprintf(sbuf, sizeof sbuf, "%.3f [%.3f, %.3f]", s["point"].get<double>(), s["lo"].get<double>(),
                  s["hi"].get<double>());
    std::snprintf(ebuf, sizeof ebuf, "%.1f [%.1f, %.1f]", e["point"].get<double>(), e["lo"].get<double>(),
                  e["hi"].get<double>());
    std::printf("%-*s %5zu  %-24s %-28s\n", static_cast<int>(width), key.c_str(), c["count"].get<std::size_t>(), sbuf,
                ebuf);
  }
  std::printf("failures: %zu\n", doc["failures"]["count"].get<std::size_t>());
}

int cmd_bench(BenchOptions o, bool quiet) {
  if (o.list) {
    char* raw = nullptr;
    check(qvl_preset_names(&raw));
    std::cout << take(raw);
    return 0;
  }
  if (o.spec.empty() == o.preset.empty()) throw Failure{"invalid-argument: give exactly one of --spec or --preset"};
  if (o.seed) o.overrides.push_back("master_seed=" + std::to_string(*o.seed));
  std::vector<const char*> sets;
  for (const std::string& s : o.overrides) sets.push_back(s.c_str());

  Experiment exp;
  if (!o.preset.empty()) {
    check(qvl_experiment_preset(o.preset.c_str(), sets.data(), sets.size(), exp.out()));
  } else {
    std::ifstream in(o.spec, std::ios::binary);
    if (!in) throw Failure{"io: cannot open '" + o.spec + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    check(qvl_experiment_from_json(ss.str().c_str(), sets.data(), sets.size(), exp.out()));
  }
  if (o.dry_run) {
    char* raw = nullptr;
    check(qvl_experiment_to_json(exp.get(), &raw));
    std::cout << take(raw);
    return 0;
  }
  if (o.out.empty()) throw Failure{"invalid-argument: --out is required"};

  Store store;
  check(qvl_bench_run(exp.get(), o.workers, store.out()));
  check(qvl_store_write(store.get(), o.out.c_str()));
  if (!quiet) {
    char* raw = nullptr;
    check(qvl_store_aggregate_json(store.get(), &raw));
    print_summary(take(raw));
    std::cout << "wrote " << qvl_store_size(store.get()) << " results to " << o.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct HardnessOptions {
  std::vector<std::string> files;
  GenOptions gen;
  double dh_min = 0.0;
  double dh_max = 1.0;
  std::string out;
};

int cmd_hardness(HardnessOptions o, bool quiet) {
  std::ostringstream csv;
  csv << "seed,n,edges,density,ground_energy,ground_degeneracy,first_excited_energy,first_excited_degeneracy,"
         "hamming_bits,d_h\n";
  std::size_t rows = 0, skipped = 0;
  auto emit = [&](const qvl_instance* inst, bool generated) {
    Spectrum spec;
    const qvl_status st = qvl_spectrum_compute(inst, spec.out());
    if (st == QVL_ERR_DEGENERATE_SPECTRUM && generated) {
      ++skipped;
      return;
    }
    check(st);
    const double dh = qvl_spectrum_hamming_distance(spec.get());
    if (dh < o.dh_min || dh > o.dh_max) return;
    double density = 0.0;
    if (qvl_instance_n(inst) >= 2) check(qvl_instance_density(inst, &density));
    csv << qvl_instance_seed(inst) << "," << qvl_instance_n(inst) << "," << qvl_instance_edge_count(inst) << ","
        << format("%.10g", density) << "," << qvl_spectrum_ground_energy(spec.get()) << ","
        << qvl_spectrum_ground_degeneracy(spec.get()) << "," << qvl_spectrum_first_excited_energy(spec.get()) << ","
        << qvl_spectrum_first_excited_degeneracy(spec.get()) << "," << qvl_spectrum_hamming_bits(spec.get()) << ","
        << format("%.10g", dh) << "\n";
    ++rows;
  };
  if (!o.files.empty()) {
    for (const std::string& f : o.files) {
      Instance inst;
      check(qvl_instance_load(f.c_str(), inst.out()));
      emit(inst.get(), false);
    }
  } else {
    if (o.gen.n <= 0) throw Failure{"invalid-argument: give instance files or --n with --edges/--density"};
    if (!o.gen.edges && !o.gen.density) throw Failure{"invalid-argument: --edges or --density is required"};
    const int edges = resolve_edges(o.gen, quiet || o.out.empty());
    for (int k = 0; k < o.gen.count; ++k) {
      Instance inst;
      check(qvl_instance_generate(o.gen.n, edges, o.gen.kind.c_str(),
                                  qvl_derive_seed(o.gen.seed, 0, static_cast<std::uint32_t>(k)), inst.out()));
      emit(inst.get(), true);
    }
  }
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(o.out, csv.str());
    if (!quiet) {
      std::cout << "wrote " << rows << " row(s) to " << o.out << "\n";
      if (skipped) std::cout << "skipped " << skipped << " constant-energy instance(s)\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ReportOptions {
  std::string store;
  std::string figure;
  std::string out;
  bool svg = false;
};

int cmd_report(const ReportOptions& o, bool quiet) {
  Store store;
  check(qvl_store_read(o.store.c_str(), store.out()));
  const std::string out = o.out.empty() ? (fs::path(o.store) / "report").string() : o.out;
  char* raw = nullptr;
  check(qvl_report(store.get(), o.figure.empty() ? nullptr : o.figure.c_str(), out.c_str(), o.svg ? 1 : 0, &raw));
  const std::string written = take(raw);
  if (!quiet) std::cout << written;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational QUBO lab: instance generation, VQE/CVaR-VQE runs, batched benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qvl_version());
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Only write files; print nothing on success");
  app.fallthrough();

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate random QUBO instances");
  g->add_option("--n", gen.n, "Number of variables")->required()->check(CLI::Range(1, 64));
  auto* g_edges = g->add_option("--edges", gen.edges, "Number of edges");
  auto* g_density = g->add_option("--density", gen.density, "Target density, rounded to the nearest edge count");
  g_edges->excludes(g_density);
  g->add_option("--kind", gen.kind, "regular or uniform-random")->capture_default_str();
  g->add_option("--count", gen.count, "Number of instances")->capture_default_str()->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  g->add_option("--out", gen.out, "Output directory")->required();

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Run one variational optimization");
  s->add_option("instance", solve.instance, "Instance JSON file")->required();
  s->add_option("--ansatz", solve.ansatz, "Entanglement: none, linear, compatible, random")->capture_default_str();
  s->add_option("--layers", solve.layers, "Entangling layers")->capture_default_str()->check(CLI::NonNegativeNumber);
  s->add_option("--rho", solve.rho, "CVaR fraction; 1 gives VQE")->capture_default_str();
  s->add_option("--shots", solve.shots, "Shots per evaluation; 0 evaluates exactly")->capture_default_str();
  s->add_option("--optimizer", solve.optimizer, "spsa, nelder-mead or quasi-newton")->capture_default_str();
  s->add_option("--seed", solve.seed, "Run seed")->capture_default_str();
  s->add_option("--beta", solve.beta, "Success cut-off on the ground overlap")->capture_default_str();
  s->add_option("--max-iterations", solve.max_iterations, "Iteration cap; 0 keeps the optimizer default");
  s->add_option("--history-stride", solve.history_stride, "Keep every k-th cost history entry")
      ->capture_default_str();
  s->add_option("--out", solve.out, "Write the JSON report here");

  BenchOptions bench;
  bench.workers = default_workers();
  auto* b = app.add_subcommand("bench", "Run a batched experiment");
  b->add_option("--spec", bench.spec, "Experiment JSON file");
  b->add_option("--preset", bench.preset, "Built-in experiment");
  b->add_option("--set", bench.overrides, "Override key=value (repeatable)");
  b->add_option("--seed", bench.seed, "Master seed override");
  b->add_option("--out", bench.out, "Output directory");
  b->add_option("--workers", bench.workers, "Worker threads (default: QVLAB_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  b->add_flag("--dry-run", bench.dry_run, "Print the resolved experiment and exit");
  b->add_flag("--list-presets", bench.list, "List built-in experiments");

  HardnessOptions hard;
  auto* h = app.add_subcommand("hardness", "Tabulate exact spectra and Hamming distances");
  h->add_option("instances", hard.files, "Instance JSON files");
  h->add_option("--n", hard.gen.n, "Generate instances with this many variables")->check(CLI::Range(1, 64));
  auto* h_edges = h->add_option("--edges", hard.gen.edges, "Edges of generated instances");
  auto* h_density = h->add_option("--density", hard.gen.density, "Density of generated instances");
  h_edges->excludes(h_density);
  h->add_option("--kind", hard.gen.kind, "regular or uniform-random")->capture_default_str();
  h->add_option("--count", hard.gen.count, "Generated instances (constant-energy ones are skipped)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  h->add_option("--seed", hard.gen.seed, "Master seed")->capture_default_str();
  h->add_option("--dh-min", hard.dh_min, "Keep rows with d_H >= this")->capture_default_str();
  h->add_option("--dh-max", hard.dh_max, "Keep rows with d_H <= this")->capture_default_str();
  h->add_option("--out", hard.out, "CSV file (default: stdout)");

  ReportOptions rep;
  auto* r = app.add_subcommand("report", "Emit plot-ready series from a result store");
  r->add_option("store", rep.store, "Directory written by bench")->required();
  r->add_option("--figure", rep.figure, "fig3..fig10 or table1 (default: from the experiment name)");
  r->add_option("--out", rep.out, "Output directory (default: <store>/report)");
  r->add_flag("--svg", rep.svg, "Also write SVG line plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (g->parsed()) {
      if (!gen.edges && !gen.density) throw Failure{"invalid-argument: --edges or --density is required"};
      return cmd_gen(gen, quiet);
    }
    if (s->parsed()) return cmd_solve(solve, quiet);
    if (b->parsed()) return cmd_bench(bench, quiet);
    if (h->parsed()) return cmd_hardness(hard, quiet);
    if (r->parsed()) return cmd_report(rep, quiet);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
