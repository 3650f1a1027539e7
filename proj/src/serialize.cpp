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
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qvlab/error.hpp"
#include "qvlab/io.hpp"

namespace qvlab {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string(what) + ": " + e.what());
  }
}

// Typed access with schema errors that name the offending key.
class Fields {
 public:
  Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) fail(ErrorCode::schema, where_ + " must be an object");
  }

  bool has(const char* key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  const json& at(const char* key) {
    if (!has(key)) fail(ErrorCode::schema, where_ + ": missing key '" + key + "'");
    return obj_.at(key);
  }

  template <class T>
  T get(const char* key) {
    return convert<T>(at(key), key);
  }

  template <class T>
  void read(const char* key, T& out) {
    if (has(key)) out = convert<T>(obj_.at(key), key);
  }

  template <class T>
  T convert(const json& v, const std::string& key) const {
    const std::string path = where_ + "." + key;
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(ErrorCode::schema, path + " must be a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(ErrorCode::schema, path + " must be a string");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) fail(ErrorCode::schema, path + " must be a number");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) fail(ErrorCode::schema, path + " must be a non-negative integer");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) fail(ErrorCode::schema, path + " must be an integer");
    }
    return v.get<T>();
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) fail(ErrorCode::schema, where_ + ": unknown key '" + it.key() + "'");
  }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> seen_;
};

template <class F>
auto schema_guard(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema) throw;
    fail(ErrorCode::schema, where + ": " + e.what());
  }
}

std::string hex_index(BasisIndex x, int n) {
  const int digits = std::max(1, (n + 3) / 4);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*" PRIx64, digits, static_cast<std::uint64_t>(x));
  return buf;
}

std::string bitstring(BasisIndex x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((x >> q) & 1u) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered ci_json(const ConfidenceInterval& ci) { return ordered{{"point", ci.point}, {"lo", ci.lo}, {"hi", ci.hi}}; }

ordered aggregate_json(const AggregateResult& a) {
  ordered o{{"key", a.key}, {"count", a.count}, {"empty", a.empty}};
  if (!a.empty) {
    o["success_rate"] = ci_json(a.success_rate);
    o["evaluations"] = ci_json(a.evaluations);
  }
  return o;
}

// ---------------------------------------------------------------------------
// Experiment documents

AnsatzChoice parse_ansatz(const json& v, std::size_t k) {
  const std::string where = "ansatze[" + std::to_string(k) + "]";
  return schema_guard(where, [&] {
    AnsatzChoice a;
    if (v.is_string()) {
      const std::string label = v.get<std::string>();
      if (label == "product") return a;
      const auto dash = label.rfind("-L");
      if (dash == std::string::npos) fail(ErrorCode::schema, where + ": expected 'product' or '<kind>-L<layers>'");
      a.entanglement = entanglement_from_string(label.substr(0, dash));
      try {
        std::size_t used = 0;
        a.layers = std::stoi(label.substr(dash + 2), &used);
        if (used != label.size() - dash - 2) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(ErrorCode::schema, where + ": bad layer count in '" + label + "'");
      }
      return a;
    }
    Fields f(v, where);
    a.layers = f.get<int>("layers");
    a.entanglement = a.layers == 0 ? Entanglement::none : Entanglement::linear;
    if (f.has("entanglement")) a.entanglement = entanglement_from_string(f.get<std::string>("entanglement"));
    f.finish();
    return a;
  });
}

OptimizerChoice parse_optimizer(const json& v, std::size_t k) {
  const std::string where = "optimizers[" + std::to_string(k) + "]";
  return schema_guard(where, [&] {
    OptimizerChoice o;
    if (v.is_string()) {
      o.kind = optimizer_from_string(v.get<std::string>());
      return o;
    }
    Fields f(v, where);
    o.kind = optimizer_from_string(f.get<std::string>("kind"));
    if (f.has("applies_to")) o.applies_to = evaluation_filter_from_string(f.get<std::string>("applies_to"));
    f.finish();
    return o;
  });
}

template <class T>
std::vector<T> parse_list(const json& v, const char* key) {
  if (!v.is_array()) fail(ErrorCode::schema, std::string(key) + " must be an array");
  std::vector<T> out;
  Fields dummy(json::object(), key);
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(dummy.convert<T>(v[k], std::to_string(k)));
  return out;
}

ExperimentSpec parse_experiment(const json& doc) {
  ExperimentSpec spec;
  Fields f(doc, "experiment");
  f.read("name", spec.name);
  f.read("n_qubits", spec.n_qubits);
  if (f.has("graph_kind"))
    spec.graph_kind = schema_guard("graph_kind", [&] { return graph_kind_from_string(f.get<std::string>("graph_kind")); });

  const bool by_count = f.has("edge_counts"), by_density = f.has("densities");
  if (by_count == by_density) fail(ErrorCode::schema, "experiment: give exactly one of 'edge_counts' or 'densities'");
  if (by_count) {
    spec.edge_counts = parse_list<int>(doc.at("edge_counts"), "edge_counts");
  } else {
    const int max_edges = spec.n_qubits * (spec.n_qubits - 1) / 2;
    for (double d : parse_list<double>(doc.at("densities"), "densities")) {
      if (!(d >= 0.0 && d <= 1.0)) fail(ErrorCode::schema, "densities must lie in [0, 1]");
      spec.edge_counts.push_back(static_cast<int>(std::lround(d * max_edges)));
    }
  }
  f.read("n_instances", spec.n_instances);

  const json& ansatze = f.at("ansatze");
  if (!ansatze.is_array()) fail(ErrorCode::schema, "ansatze must be an array");
  for (std::size_t k = 0; k < ansatze.size(); ++k) spec.ansatze.push_back(parse_ansatz(ansatze[k], k));

  if (f.has("rhos")) spec.rhos = parse_list<double>(doc.at("rhos"), "rhos");
  if (f.has("shots")) {
    const json& shots = doc.at("shots");
    if (!shots.is_array()) fail(ErrorCode::schema, "shots must be an array");
    spec.shots.clear();
    for (const json& s : shots) {
      if (s.is_string() && s.get<std::string>() == "exact")
        spec.shots.push_back(0);
      else if (s.is_number_unsigned())
        spec.shots.push_back(s.get<std::uint64_t>());
      else
        fail(ErrorCode::schema, "shots entries must be non-negative integers or \"exact\"");
    }
  }
  if (f.has("optimizers")) {
    const json& opts = doc.at("optimizers");
    if (!opts.is_array()) fail(ErrorCode::schema, "optimizers must be an array");
    spec.optimizers.clear();
    for (std::size_t k = 0; k < opts.size(); ++k) spec.optimizers.push_back(parse_optimizer(opts[k], k));
  }

  f.read("beta", spec.settings.beta);
  f.read("perturbation", spec.settings.perturbation);
  f.read("random_perturbation", spec.settings.random_perturbation);
  if (f.has("optimizer_overrides")) {
    Fields o(doc.at("optimizer_overrides"), "optimizer_overrides");
    OptimizerOverrides& ov = spec.settings.overrides;
    if (o.has("max_iterations")) ov.max_iterations = o.get<int>("max_iterations");
    if (o.has("ftol")) ov.ftol = o.get<double>("ftol");
    if (o.has("patience")) ov.patience = o.get<int>("patience");
    if (o.has("spsa_a")) ov.spsa_a = o.get<double>("spsa_a");
    if (o.has("spsa_c")) ov.spsa_c = o.get<double>("spsa_c");
    if (o.has("spsa_target_first_step")) ov.spsa_target_first_step = o.get<double>("spsa_target_first_step");
    o.finish();
  }
  if (f.has("selection")) {
    Fields s(doc.at("selection"), "selection");
    if (s.has("mode"))
      spec.selection.mode = schema_guard("selection.mode", [&] { return selection_mode_from_string(s.get<std::string>("mode")); });
    s.read("quota", spec.selection.quota);
    s.read("max_candidates", spec.selection.max_candidates);
    s.finish();
  }
  if (f.has("hardness_edges")) spec.hardness_edges = parse_list<double>(doc.at("hardness_edges"), "hardness_edges");
  f.read("master_seed", spec.master_seed);
  f.finish();
  spec.validate();
  return spec;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorCode::invalid_argument, "override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) fail(ErrorCode::invalid_argument, "override key '" + key + "' has an empty component");
    if (!node->is_object()) fail(ErrorCode::schema, "override key '" + key + "' descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
  if (key == "densities") doc.erase("edge_counts");
  if (key == "edge_counts") doc.erase("densities");
}

// ---------------------------------------------------------------------------
// Results

ordered result_json(const InstanceResult& r, const ExperimentSpec& spec) {
  ordered o;
  o["cell_index"] = r.cell_index;
  o["instance_index"] = r.instance_index;
  o["cell"] = r.cell_label;
  o["graph_cell"] = r.graph_cell;
  o["edge_count"] = spec.edge_counts.at(static_cast<std::size_t>(r.graph_cell));
  o["ansatz"] = r.ansatz.label();
  o["entanglement"] = std::string(to_string(r.ansatz.entanglement));
  o["layers"] = r.ansatz.layers;
  o["cost"] = r.rho == 1.0 ? "VQE" : "CVaR-VQE";
  o["rho"] = r.rho;
  o["shots"] = r.shots;
  o["optimizer"] = std::string(to_string(r.optimizer));
  o["instance_seed"] = r.instance_seed;
  o["run_seed"] = r.run_seed;
  o["n"] = r.n;
  o["edges"] = r.edges;
  o["density"] = r.density;
  if (r.hamming_bits) {
    o["hamming_bits"] = *r.hamming_bits;
    o["d_h"] = *r.d_h();
  } else {
    o["hamming_bits"] = nullptr;
    o["d_h"] = nullptr;
  }
  if (r.ok()) {
    o["success"] = r.success;
    o["overlap"] = r.overlap;
    o["evaluations"] = r.evaluations;
    o["iterations"] = r.iterations;
    o["final_cost"] = r.final_cost;
    o["terminated_by"] = r.terminated_by;
    o["error"] = nullptr;
  } else {
    o["error"] = r.error;
  }
  return o;
}

InstanceResult result_from_json(const json& v, std::size_t line) {
  const std::string where = "results line " + std::to_string(line);
  return schema_guard(where, [&] {
    InstanceResult r;
    Fields f(v, where);
    r.cell_index = f.get<std::size_t>("cell_index");
    r.instance_index = f.get<std::size_t>("instance_index");
    r.cell_label = f.get<std::string>("cell");
    r.graph_cell = f.get<int>("graph_cell");
    f.at("edge_count");
    f.at("ansatz");
    f.at("cost");
    r.ansatz.entanglement = entanglement_from_string(f.get<std::string>("entanglement"));
    r.ansatz.layers = f.get<int>("layers");
    r.rho = f.get<double>("rho");
    r.shots = f.get<std::uint64_t>("shots");
    r.optimizer = optimizer_from_string(f.get<std::string>("optimizer"));
    r.instance_seed = f.get<std::uint64_t>("instance_seed");
    r.run_seed = f.get<std::uint64_t>("run_seed");
    r.n = f.get<int>("n");
    r.edges = f.get<int>("edges");
    r.density = f.get<double>("density");
    f.at("d_h");
    if (!f.at("hamming_bits").is_null()) r.hamming_bits = f.get<int>("hamming_bits");
    if (!f.at("error").is_null()) {
      r.error = f.get<std::string>("error");
      if (r.error.empty()) fail(ErrorCode::schema, where + ": empty error");
    } else {
      r.success = f.get<int>("success");
      r.overlap = f.get<double>("overlap");
      r.evaluations = f.get<std::uint64_t>("evaluations");
      r.iterations = f.get<int>("iterations");
      r.final_cost = f.get<double>("final_cost");
      r.terminated_by = f.get<std::string>("terminated_by");
    }
    f.finish();
    return r;
  });
}

}  // namespace

// ---------------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::io, "read error on '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) fail(ErrorCode::io, "write error on '" + path.string() + "'");
}

std::string instance_to_json(const QuboInstance& inst) {
  ordered o;
  o["n"] = inst.n();
  o["graph_kind"] = std::string(to_string(inst.graph_kind()));
  o["seed"] = inst.seed();
  ordered edges = ordered::array();
  for (const Edge& e : inst.edges()) edges.push_back({e.i, e.j, e.w});
  o["edges"] = std::move(edges);
  return o.dump() + "\n";
}

QuboInstance instance_from_json(std::string_view text) {
  const json doc = parse_json(text, "instance");
  return schema_guard("instance", [&] {
    Fields f(doc, "instance");
    const int n = f.get<int>("n");
    GraphKind kind = GraphKind::uniform_random;
    if (f.has("graph_kind")) kind = graph_kind_from_string(f.get<std::string>("graph_kind"));
    std::uint64_t seed = 0;
    f.read("seed", seed);
    const json& list = f.at("edges");
    if (!list.is_array()) fail(ErrorCode::schema, "instance.edges must be an array");
    std::vector<Edge> edges;
    for (const json& e : list) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number_integer())
        fail(ErrorCode::schema, "instance.edges entries must be [i, j, w] integer triples");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    }
    f.finish();
    return QuboInstance(n, std::move(edges), seed, kind);
  });
}

std::string spectrum_to_json(const SpectrumReport& report) {
  ordered o;
  o["n"] = report.n;
  o["ground_energy"] = report.ground_energy;
  ordered g = ordered::array(), e = ordered::array();
  for (BasisIndex x : report.ground_manifold) g.push_back(hex_index(x, report.n));
  for (BasisIndex x : report.first_excited_manifold) e.push_back(hex_index(x, report.n));
  o["ground_manifold"] = std::move(g);
  o["first_excited_energy"] = report.first_excited_energy;
  o["first_excited_manifold"] = std::move(e);
  o["min_hamming_bits"] = report.min_hamming_bits;
  o["min_hamming_distance"] = report.min_hamming_distance();
  return o.dump(2) + "\n";
}

std::string solve_report_to_json(const QuboInstance& inst, const SpectrumReport& spectrum, const RunCell& cell,
                                 const RunSettings& settings, std::uint64_t seed, const SolveOutcome& outcome,
                                 std::size_t top_states, std::size_t history_stride) {
  ordered o;
  o["label"] = cell.cost_label();
  o["cell"] = cell.label();
  ordered cfg;
  cfg["ansatz"] = cell.ansatz.label();
  cfg["entanglement"] = std::string(to_string(outcome.ansatz.entanglement));
  cfg["layers"] = outcome.ansatz.layers;
  cfg["rho"] = cell.rho;
  cfg["shots"] = cell.shots;
  cfg["beta"] = settings.beta;
  cfg["perturbation"] = settings.perturbation;
  cfg["random_perturbation"] = settings.random_perturbation;
  cfg["seed"] = seed;
  const OptimizerConfig& oc = outcome.optimizer;
  ordered opt{{"kind", std::string(to_string(oc.kind))},
              {"max_iterations", oc.max_iterations},
              {"ftol", oc.ftol},
              {"patience", oc.patience}};
  switch (oc.kind) {
    case OptimizerKind::spsa:
      opt["a"] = oc.spsa.a;
      opt["c"] = oc.spsa.c;
      opt["alpha"] = oc.spsa.alpha;
      opt["gamma"] = oc.spsa.gamma;
      opt["stability"] = oc.spsa.stability;
      opt["target_first_step"] = oc.spsa.target_first_step;
      opt["calibration_iterations"] = oc.spsa.calibration_iterations;
      break;
    case OptimizerKind::nelder_mead:
      opt["initial_step"] = oc.nelder_mead.initial_step;
      break;
    case OptimizerKind::quasi_newton:
      opt["fd_step"] = oc.quasi_newton.fd_step;
      opt["gradient_tolerance"] = oc.quasi_newton.gradient_tolerance;
      opt["armijo"] = oc.quasi_newton.armijo;
      opt["max_halvings"] = oc.quasi_newton.max_halvings;
      opt["max_doublings"] = oc.quasi_newton.max_doublings;
      break;
  }
  cfg["optimizer"] = std::move(opt);
  ordered pairs = ordered::array();
  for (const auto& layer : outcome.ansatz.entangler_pairs) {
    ordered l = ordered::array();
    for (const auto& [a, b] : layer) l.push_back({a, b});
    pairs.push_back(std::move(l));
  }
  cfg["entangler_pairs"] = std::move(pairs);
  o["config"] = std::move(cfg);
  o["instance_seed"] = inst.seed();

  const OptimizationTrace& t = outcome.trace;
  o["evaluations"] = t.evaluations;
  o["iterations"] = t.iterations;
  o["terminated_by"] = std::string(to_string(t.terminated_by));
  o["best_cost"] = t.best_cost;
  o["final_cost"] = outcome.final_cost;
  o["overlap"] = outcome.overlap;
  o["success"] = outcome.success;
  o["ground_energy"] = spectrum.ground_energy;
  o["min_hamming_distance"] = spectrum.min_hamming_distance();

  std::vector<std::size_t> order(outcome.probabilities.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(top_states, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (outcome.probabilities[a] != outcome.probabilities[b])
                        return outcome.probabilities[a] > outcome.probabilities[b];
                      return a < b;
                    });
  ordered best = ordered::array();
  for (std::size_t k = 0; k < keep; ++k) {
    const BasisIndex x = order[k];
    best.push_back({{"bits", bitstring(x, inst.n())},
                    {"index", hex_index(x, inst.n())},
                    {"probability", outcome.probabilities[x]},
                    {"energy", inst.energy(x)}});
  }
  o["top_states"] = std::move(best);

  const std::size_t stride = std::max<std::size_t>(1, history_stride);
  ordered hist = ordered::array();
  for (std::size_t k = 0; k < t.cost_history.size(); ++k)
    if (k % stride == 0 || k + 1 == t.cost_history.size()) hist.push_back(t.cost_history[k]);
  o["cost_history_stride"] = stride;
  o["cost_history"] = std::move(hist);
  o["best_params"] = outcome.reported_params;
  return o.dump(2) + "\n";
}

ExperimentSpec experiment_from_json(std::string_view text, const std::vector<std::string>& overrides) {
  json doc = parse_json(text, "experiment");
  if (!doc.is_object()) fail(ErrorCode::schema, "experiment must be an object");
  for (const std::string& o : overrides) apply_override(doc, o);
  return parse_experiment(doc);
}

std::string experiment_to_json(const ExperimentSpec& spec) {
  ordered o;
  o["name"] = spec.name;
  o["n_qubits"] = spec.n_qubits;
  o["graph_kind"] = std::string(to_string(spec.graph_kind));
  o["edge_counts"] = spec.edge_counts;
  o["n_instances"] = spec.n_instances;
  ordered ansatze = ordered::array();
  for (const AnsatzChoice& a : spec.ansatze)
    ansatze.push_back({{"entanglement", std::string(to_string(a.entanglement))}, {"layers", a.layers}});
  o["ansatze"] = std::move(ansatze);
  o["rhos"] = spec.rhos;
  o["shots"] = spec.shots;
  ordered opts = ordered::array();
  for (const OptimizerChoice& c : spec.optimizers)
    opts.push_back({{"kind", std::string(to_string(c.kind))}, {"applies_to", std::string(to_string(c.applies_to))}});
  o["optimizers"] = std::move(opts);
  o["beta"] = spec.settings.beta;
  o["perturbation"] = spec.settings.perturbation;
  o["random_perturbation"] = spec.settings.random_perturbation;
  ordered ov = ordered::object();
  const OptimizerOverrides& x = spec.settings.overrides;
  if (x.max_iterations) ov["max_iterations"] = *x.max_iterations;
  if (x.ftol) ov["ftol"] = *x.ftol;
  if (x.patience) ov["patience"] = *x.patience;
  if (x.spsa_a) ov["spsa_a"] = *x.spsa_a;
  if (x.spsa_c) ov["spsa_c"] = *x.spsa_c;
  if (x.spsa_target_first_step) ov["spsa_target_first_step"] = *x.spsa_target_first_step;
  o["optimizer_overrides"] = std::move(ov);
  o["selection"] = {{"mode", std::string(to_string(spec.selection.mode))},
                    {"quota", spec.selection.quota},
                    {"max_candidates", spec.selection.max_candidates}};
  o["hardness_edges"] = spec.hardness_edges;
  o["master_seed"] = spec.master_seed;
  return o.dump(2) + "\n";
}

std::string results_to_ndjson(const ResultStore& store) {
  std::string out;
  for (const InstanceResult& r : store.results) {
    out += result_json(r, store.spec).dump();
    out += '\n';
  }
  return out;
}

std::string results_to_csv(const ResultStore& store) {
  std::string out =
      "cell_index,instance_index,edge_count,ansatz,cost,rho,shots,optimizer,instance_seed,density,d_h,success,"
      "overlap,evaluations,final_cost,wall_time,error\n";
  for (const InstanceResult& r : store.results) {
    out += std::to_string(r.cell_index) + "," + std::to_string(r.instance_index) + "," +
           std::to_string(store.spec.edge_counts.at(static_cast<std::size_t>(r.graph_cell))) + "," +
           r.ansatz.label() + "," + (r.rho == 1.0 ? "VQE" : "CVaR-VQE") + "," + format_double(r.rho) + "," +
           std::to_string(r.shots) + "," + std::string(to_string(r.optimizer)) + "," +
           std::to_string(r.instance_seed) + "," + format_double(r.density) + "," +
           (r.d_h() ? format_double(*r.d_h()) : "") + ",";
    if (r.ok())
      out += std::to_string(r.success) + "," + format_double(r.overlap) + "," + std::to_string(r.evaluations) + "," +
             format_double(r.final_cost) + "," + format_double(r.wall_time) + ",\n";
    else
      out += ",,,," + format_double(r.wall_time) + "," + csv_field(r.error) + "\n";
  }
  return out;
}

std::string timings_to_csv(const ResultStore& store) {
  std::string out = "cell_index,instance_index,wall_time\n";
  for (const InstanceResult& r : store.results)
    out += std::to_string(r.cell_index) + "," + std::to_string(r.instance_index) + "," + format_double(r.wall_time) +
           "\n";
  return out;
}

std::string aggregate_to_json(const ResultStore& store, const AggregateOptions& options) {
  ordered o;
  o["name"] = store.spec.name;
  o["bootstrap"] = {{"level", options.level}, {"resamples", options.resamples}, {"seed", options.seed}};
  const std::vector<AggregateResult> cells = aggregate_cells(store, options);
  ordered list = ordered::array();
  std::size_t k = 0;
  for (const AggregateResult& a : cells) {
    ordered entry = aggregate_json(a);
    const std::size_t begin = k;
    const std::size_t cell = store.results[k].cell_index;
    while (k < store.results.size() && store.results[k].cell_index == cell) ++k;
    entry["cell_index"] = cell;
    std::vector<InstanceResult> with_dh;
    for (std::size_t t = begin; t < k; ++t)
      if (store.results[t].ok() && store.results[t].hamming_bits) with_dh.push_back(store.results[t]);
    ordered bins = ordered::array();
    AggregateOptions bin_options = options;
    bin_options.seed = derive_seed(options.seed, static_cast<std::uint32_t>(cell), 1);
    for (const AggregateResult& b : bin_by_hardness(with_dh, store.spec.hardness_edges, bin_options))
      bins.push_back(aggregate_json(b));
    entry["hardness_bins"] = std::move(bins);
    list.push_back(std::move(entry));
  }
  o["cells"] = std::move(list);
  ordered failures = ordered::array();
  for (const InstanceResult& r : store.results)
    if (!r.ok())
      failures.push_back({{"cell_index", r.cell_index},
                          {"instance_index", r.instance_index},
                          {"instance_seed", r.instance_seed},
                          {"error", r.error}});
  o["failures"] = {{"count", store.failures}, {"records", std::move(failures)}};
  return o.dump(2) + "\n";
}

void write_store(const ResultStore& store, const std::filesystem::path& dir, const AggregateOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create '" + dir.string() + "': " + ec.message());
  write_text_file(dir / kSpecFile, experiment_to_json(store.spec));
  write_text_file(dir / kResultsFile, results_to_ndjson(store));
  write_text_file(dir / kCsvFile, results_to_csv(store));
  write_text_file(dir / kTimingsFile, timings_to_csv(store));
  write_text_file(dir / kAggregateFile, aggregate_to_json(store, options));
}

ResultStore read_store(const std::filesystem::path& dir) {
  ResultStore store;
  store.spec = experiment_from_json(read_text_file(dir / kSpecFile));
  const std::string text = read_text_file(dir / kResultsFile);
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.empty()) continue;
    store.results.push_back(result_from_json(parse_json(line, "results"), number));
    const InstanceResult& r = store.results.back();
    if (r.graph_cell < 0 || static_cast<std::size_t>(r.graph_cell) >= store.spec.edge_counts.size())
      fail(ErrorCode::schema, "results line " + std::to_string(number) + ": graph_cell out of range");
    if (!r.ok()) ++store.failures;
  }
  if (std::filesystem::exists(dir / kTimingsFile)) {
    std::istringstream timing(read_text_file(dir / kTimingsFile));
    std::getline(timing, line);
    std::size_t k = 0;
    while (std::getline(timing, line) && k < store.results.size()) {
      const auto comma = line.rfind(',');
      if (comma != std::string::npos) store.results[k].wall_time = std::strtod(line.c_str() + comma + 1, nullptr);
      ++k;
    }
  }
  return store;
}

}  // namespace qvlab
