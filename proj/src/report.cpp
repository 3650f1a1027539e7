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

#include "qvlab/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "qvlab/error.hpp"
#include "qvlab/io.hpp"

namespace qvlab {

namespace {

enum class Axis { density, layers, shots, hamming };

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string mode_label(std::uint64_t shots) { return shots == 0 ? "exact" : std::to_string(shots) + "shots"; }

std::string cost_label(const InstanceResult& r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s(rho=%g)", r.rho == 1.0 ? "VQE" : "CVaR-VQE", r.rho);
  return buf;
}

double graph_density(const ResultStore& store, const InstanceResult& r) {
  const int n = store.spec.n_qubits;
  return static_cast<double>(store.spec.edge_counts.at(static_cast<std::size_t>(r.graph_cell))) / (n * (n - 1) / 2);
}

struct Key {
  std::string panel;
  std::string line;
  double x = 0.0;
  bool operator<(const Key& o) const { return std::tie(panel, line, x) < std::tie(o.panel, o.line, o.x); }
};

struct Series {
  // panel -> rows in (line, x) order
  std::map<std::string, std::vector<std::pair<Key, AggregateResult>>> panels;
};

using Classifier = std::function<std::vector<Key>(const InstanceResult&)>;

Series collect(const ResultStore& store, const Classifier& classify, const AggregateOptions& options) {
  std::map<Key, std::vector<const InstanceResult*>> groups;
  for (const InstanceResult& r : store.results)
    for (const Key& k : classify(r)) groups[k].push_back(&r);
  Series s;
  for (const auto& [key, members] : groups)
    s.panels[key.panel].emplace_back(key, aggregate(key.panel + "|" + key.line + "|" + fmt(key.x), members, options));
  return s;
}

std::string series_csv(const std::vector<std::pair<Key, AggregateResult>>& rows, bool success) {
  std::string out = "line,x,y,lo,hi,n\n";
  for (const auto& [key, agg] : rows) {
    out += key.line + "," + fmt(key.x) + ",";
    if (agg.empty) {
      out += ",,,0\n";
      continue;
    }
    const ConfidenceInterval& ci = success ? agg.success_rate : agg.evaluations;
    out += fmt(ci.point) + "," + fmt(ci.lo) + "," + fmt(ci.hi) + "," + std::to_string(agg.count) + "\n";
  }
  return out;
}

std::string svg_plot(const std::vector<std::pair<Key, AggregateResult>>& rows, bool success, const std::string& title,
                     const std::string& x_label) {
  constexpr double W = 640, H = 420, L = 70, R = 170, T = 40, B = 60;
  std::map<std::string, std::vector<std::pair<double, ConfidenceInterval>>> lines;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = success ? 0.0 : xmin,
         ymax = success ? 1.0 : -xmin;
  double finite_xmax = -xmin;
  for (const auto& [key, agg] : rows)
    if (!std::isinf(key.x)) finite_xmax = std::max(finite_xmax, key.x);
  for (const auto& [key, agg] : rows) {
    if (agg.empty) continue;
    const ConfidenceInterval ci = success ? agg.success_rate : agg.evaluations;
    // Infinite x (exact evaluation) is drawn one step past the last finite point.
    const double x = std::isinf(key.x) ? (std::isinf(finite_xmax) ? 1.0 : finite_xmax * 1.25) : key.x;
    lines[key.line].emplace_back(x, ci);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, ci.lo);
    ymax = std::max(ymax, ci.hi);
  }
  if (lines.empty()) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" font-family=\"sans-serif\" "
                "font-size=\"12\">\n<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
                W, H);
  s += buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"24\" font-size=\"14\">%s</text>\n", L, title.c_str());
  s += buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n"
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                L, H - B, W - R, H - B, L, T, L, H - B);
  s += buf;
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4, yv = ymin + (ymax - ymin) * k / 4;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n"
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%s</text>\n",
                  px(xv), H - B + 18, fmt(xv).c_str(), L - 6, py(yv) + 4, fmt(yv).c_str());
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n", (L + W - R) / 2,
                H - 16, x_label.c_str());
  s += buf;
  std::size_t color = 0;
  for (const auto& [name, pts] : lines) {
    const char* c = palette[color++ % 8];
    std::string poly;
    for (const auto& [x, ci] : pts) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(ci.point));
      poly += buf;
      std::snprintf(buf, sizeof buf,
                    "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-opacity=\"0.5\"/>\n",
                    px(x), py(ci.lo), px(x), py(ci.hi), c);
      s += buf;
    }
    s += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"2\" points=\"" + poly + "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" fill=\"%s\">%s</text>\n", W - R + 10,
                  T + 16.0 * static_cast<double>(color), c, name.c_str());
    s += buf;
  }
  return s + "</svg>\n";
}

std::vector<ReportFile> emit_series(const Series& s, const std::string& prefix, const std::string& x_label, bool svg) {
  std::vector<ReportFile> files;
  for (const auto& [panel, rows] : s.panels) {
    for (bool success : {true, false}) {
      const std::string stem = std::string(success ? "success" : "evaluations") + "_" + prefix + panel;
      files.push_back({stem + ".csv", series_csv(rows, success)});
      if (svg) files.push_back({stem + ".svg", svg_plot(rows, success, stem, x_label)});
    }
  }
  return files;
}

std::vector<ReportFile> overlap_histogram(const ResultStore& store) {
  std::map<std::size_t, std::array<std::size_t, 10>> counts;
  std::map<std::size_t, const InstanceResult*> first;
  for (const InstanceResult& r : store.results) {
    if (!r.ok()) continue;
    auto& c = counts[r.cell_index];
    first.emplace(r.cell_index, &r);
    c[static_cast<std::size_t>(std::min(9, static_cast<int>(std::floor(r.overlap * 10.0))))]++;
  }
  std::string out = "cell_index,cell,edge_count,density,bin_lo,bin_hi,count,percent\n";
  for (const auto& [cell, c] : counts) {
    const InstanceResult& r = *first.at(cell);
    std::size_t total = 0;
    for (std::size_t v : c) total += v;
    for (int b = 0; b < 10; ++b)
      out += std::to_string(cell) + "," + r.cell_label + "," +
             std::to_string(store.spec.edge_counts.at(static_cast<std::size_t>(r.graph_cell))) + "," +
             fmt(graph_density(store, r)) + "," + fmt(b / 10.0) + "," + fmt((b + 1) / 10.0) + "," +
             std::to_string(c[b]) + "," + fmt(100.0 * static_cast<double>(c[b]) / static_cast<double>(total)) + "\n";
  }
  return {{"overlap_histogram.csv", out}};
}

std::vector<ReportFile> table(const ResultStore& store, const AggregateOptions& options) {
  std::map<std::pair<std::string, std::uint64_t>, std::vector<InstanceResult>> groups;
  std::vector<std::pair<std::string, std::uint64_t>> order;
  for (const InstanceResult& r : store.results) {
    if (!r.ok()) continue;
    if (!r.hamming_bits) fail(ErrorCode::schema, "table1 needs d_h for every result");
    auto key = std::make_pair(r.ansatz.label(), r.shots);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(r);
  }
  std::string out = "ansatz,mode,bin,n,success,success_lo,success_hi,evaluations,evaluations_lo,evaluations_hi\n";
  for (const auto& key : order) {
    AggregateOptions o = options;
    o.seed = derive_seed(options.seed, name_tag(key.first), static_cast<std::uint32_t>(key.second));
    const auto bins = bin_by_hardness(groups[key], store.spec.hardness_edges, o);
    for (const AggregateResult& b : bins) {
      out += key.first + "," + mode_label(key.second) + "," + b.key + "," + std::to_string(b.count) + ",";
      if (b.empty)
        out += ",,,,,\n";
      else
        out += fmt(b.success_rate.point) + "," + fmt(b.success_rate.lo) + "," + fmt(b.success_rate.hi) + "," +
               fmt(b.evaluations.point) + "," + fmt(b.evaluations.lo) + "," + fmt(b.evaluations.hi) + "\n";
    }
  }
  return {{"table1.csv", out}};
}

}  // namespace

std::vector<std::string> report_figures() {
  return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "table1"};
}

std::string default_figure(const ExperimentSpec& spec) {
  const std::string& name = spec.name;
  const auto dash = name.find('-');
  const std::string head = name.substr(0, dash);
  for (const std::string& f : report_figures())
    if (f == head) return f;
  fail(ErrorCode::invalid_argument, "cannot infer a figure from experiment name '" + name + "'");
}

std::vector<ReportFile> build_report(const ResultStore& store, std::string_view figure,
                                     const AggregateOptions& options, bool svg) {
  if (figure == "fig4") return overlap_histogram(store);
  if (figure == "table1") return table(store, options);

  Classifier classify;
  std::string x_label;
  if (figure == "fig5" || figure == "fig6" || figure == "fig8") {
    x_label = "density";
    classify = [&](const InstanceResult& r) {
      return std::vector<Key>{{r.ansatz.label(), cost_label(r) + "/" + mode_label(r.shots) + "/" +
                                                     std::string(to_string(r.optimizer)),
                               graph_density(store, r)}};
    };
  } else if (figure == "fig7") {
    x_label = "layers";
    std::set<Entanglement> kinds;
    for (const InstanceResult& r : store.results)
      if (r.ansatz.layers > 0) kinds.insert(r.ansatz.entanglement);
    classify = [&store, kinds](const InstanceResult& r) {
      const std::string line = "D=" + fmt(graph_density(store, r)) + "/" + mode_label(r.shots);
      std::vector<Key> keys;
      if (r.ansatz.layers == 0 && !kinds.empty()) {
        for (Entanglement e : kinds) keys.push_back({std::string(to_string(e)), line, 0.0});
      } else {
        keys.push_back({std::string(to_string(r.ansatz.entanglement)), line, static_cast<double>(r.ansatz.layers)});
      }
      return keys;
    };
  } else if (figure == "fig3") {
    x_label = "shots";
    classify = [&](const InstanceResult& r) {
      return std::vector<Key>{{r.ansatz.label(), std::string(to_string(r.optimizer)) + "/" + cost_label(r),
                               r.shots == 0 ? std::numeric_limits<double>::infinity()
                                            : static_cast<double>(r.shots)}};
    };
  } else if (figure == "fig9" || figure == "fig10") {
    x_label = "d_H";
    for (const InstanceResult& r : store.results)
      if (r.ok() && !r.hamming_bits) fail(ErrorCode::schema, std::string(figure) + " needs d_h for every result");
    classify = [&](const InstanceResult& r) {
      if (!r.hamming_bits) return std::vector<Key>{};
      return std::vector<Key>{{"dh", r.ansatz.label() + "/" + mode_label(r.shots), *r.d_h()}};
    };
  } else {
    fail(ErrorCode::invalid_argument, "unknown figure '" + std::string(figure) + "'");
  }
  return emit_series(collect(store, classify, options), "", x_label, svg);
}

std::vector<std::filesystem::path> write_report(const std::vector<ReportFile>& files,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const ReportFile& f : files) {
    written.push_back(dir / f.name);
    write_text_file(written.back(), f.content);
  }
  return written;
}

}  // namespace qvlab
