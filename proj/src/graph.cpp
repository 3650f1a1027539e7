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
#include <numeric>
#include <set>
#include <string>

#include "qvlab/error.hpp"
#include "qvlab/qubo.hpp"

namespace qvlab {

namespace {

constexpr int kMaxRestarts = 10000;

std::vector<VertexPair> sample_uniform(int n, int edge_count, Rng& rng) {
  std::vector<VertexPair> all;
  all.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
  // Partial Fisher-Yates: the first edge_count slots are a uniform subset.
  for (int k = 0; k < edge_count; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, all.size() - 1);
    std::swap(all[k], all[pick(rng)]);
  }
  all.resize(edge_count);
  return all;
}

// Degrees as equal as possible summing to 2m; the vertices receiving the
// larger degree are a uniform random subset.
std::vector<int> near_regular_degrees(int n, int edge_count, Rng& rng) {
  const int stubs = 2 * edge_count;
  const int base = stubs / n;
  const int extra = stubs % n;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> degree(n, base);
  for (int k = 0; k < extra; ++k) ++degree[order[k]];
  return degree;
}

bool any_valid_pair(const std::vector<int>& stubs, const std::set<VertexPair>& used) {
  for (std::size_t a = 0; a < stubs.size(); ++a)
    for (std::size_t b = a + 1; b < stubs.size(); ++b) {
      int u = std::min(stubs[a], stubs[b]), v = std::max(stubs[a], stubs[b]);
      if (u != v && !used.contains({u, v})) return true;
    }
  return false;
}

std::vector<VertexPair> sample_regular(int n, int edge_count, Rng& rng) {
  const std::vector<int> degree = near_regular_degrees(n, edge_count, rng);
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), degree[v], v);
    std::set<VertexPair> used;
    int misses = 0;
    bool stuck = false;
    while (!stubs.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
      std::size_t a = pick(rng), b = pick(rng);
      int u = std::min(stubs[a], stubs[b]), v = std::max(stubs[a], stubs[b]);
      if (a == b || u == v || used.contains({u, v})) {
        if (++misses % 64 == 0 && !any_valid_pair(stubs, used)) {
          stuck = true;
          break;
        }
        continue;
      }
      used.insert({u, v});
      if (a < b) std::swap(a, b);
      stubs[a] = stubs.back();
      stubs.pop_back();
      stubs[b] = stubs.back();
      stubs.pop_back();
    }
    if (!stuck) return {used.begin(), used.end()};
  }
  fail(ErrorCode::infeasible_graph,
       "regular graph construction failed after " + std::to_string(kMaxRestarts) + " restarts");
}

}  // namespace

std::string_view to_string(GraphKind kind) {
  return kind == GraphKind::regular ? "regular" : "uniform-random";
}

GraphKind graph_kind_from_string(std::string_view name) {
  if (name == "regular") return GraphKind::regular;
  if (name == "uniform-random" || name == "uniform") return GraphKind::uniform_random;
  fail(ErrorCode::invalid_argument, "unknown graph kind '" + std::string(name) + "'");
}

std::vector<VertexPair> generate_graph(int n, int edge_count, GraphKind kind, Rng& rng) {
  if (n < 1) fail(ErrorCode::invalid_argument, "graph needs at least one vertex");
  const int max_edges = n * (n - 1) / 2;
  if (edge_count < 0 || edge_count > max_edges)
    fail(ErrorCode::invalid_argument, "edge count " + std::to_string(edge_count) +
                                          " out of range [0, " + std::to_string(max_edges) + "]");

  std::vector<VertexPair> pairs;
  if (kind == GraphKind::uniform_random) {
    pairs = sample_uniform(n, edge_count, rng);
  } else if (2 * edge_count > max_edges) {
    // Sparse pairing is far more likely to succeed; take the complement.
    std::vector<VertexPair> sparse = sample_regular(n, max_edges - edge_count, rng);
    std::set<VertexPair> removed(sparse.begin(), sparse.end());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!removed.contains({i, j})) pairs.emplace_back(i, j);
  } else {
    pairs = sample_regular(n, edge_count, rng);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Edge> assign_weights(std::span<const VertexPair> pairs, Rng& rng) {
  std::uniform_int_distribution<int> draw(-10, 10);
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    int w = 0;
    while (w == 0) w = draw(rng);
    edges.push_back({i, j, w});
  }
  return edges;
}

}  // namespace qvlab
