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
#include <bit>
#include <string>

#include "qvlab/error.hpp"
#include "qvlab/qubo.hpp"

namespace qvlab {

QuboInstance::QuboInstance(int n, std::vector<Edge> edges, std::uint64_t seed, GraphKind kind)
    : n_(n), weights_(static_cast<std::size_t>(n) * std::max(n, 0), 0), seed_(seed), kind_(kind) {
  if (n < 1 || n > 64) fail(ErrorCode::invalid_argument, "variable count must be in [1, 64]");
  for (Edge& e : edges) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n)
      fail(ErrorCode::invalid_argument,
           "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") out of range");
    if (e.i == e.j) fail(ErrorCode::invalid_argument, "self-loop on vertex " + std::to_string(e.i));
    if (e.w == 0) fail(ErrorCode::invalid_argument, "zero-weight edge");
    int& slot = weights_[static_cast<std::size_t>(e.i) * n + e.j];
    if (slot != 0)
      fail(ErrorCode::invalid_argument,
           "duplicate edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
    slot = e.w;
    weights_[static_cast<std::size_t>(e.j) * n + e.i] = e.w;
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  edges_ = std::move(edges);
}

QuboInstance QuboInstance::generate(int n, int edge_count, GraphKind kind, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VertexPair> pairs = generate_graph(n, edge_count, kind, rng);
  return QuboInstance(n, assign_weights(pairs, rng), seed, kind);
}

double QuboInstance::density() const {
  if (n_ < 2) fail(ErrorCode::invalid_argument, "density needs at least two vertices");
  return 2.0 * static_cast<double>(edges_.size()) / (static_cast<double>(n_) * (n_ - 1));
}

std::int64_t QuboInstance::energy(std::span<const std::uint8_t> bits) const {
  if (bits.size() != static_cast<std::size_t>(n_))
    fail(ErrorCode::dimension_mismatch, "bitstring length " + std::to_string(bits.size()) +
                                            " does not match n=" + std::to_string(n_));
  std::int64_t e = 0;
  for (const Edge& edge : edges_)
    if (bits[edge.i] && bits[edge.j]) e += 2 * edge.w;
  return e;
}

std::int64_t QuboInstance::energy(BasisIndex index) const {
  std::int64_t e = 0;
  for (const Edge& edge : edges_)
    if ((index >> edge.i & 1u) && (index >> edge.j & 1u)) e += 2 * edge.w;
  return e;
}

std::vector<std::int64_t> QuboInstance::energy_table() const {
  if (n_ > kMaxEnumerableVariables)
    fail(ErrorCode::too_large, "energy table needs n <= " + std::to_string(kMaxEnumerableVariables));
  const std::size_t dim = std::size_t{1} << n_;
  std::vector<std::int64_t> table(dim, 0);
  // E(x) = E(x without its lowest set bit k) + 2 * sum_{j in x, j != k} Q_kj.
  for (std::size_t x = 1; x < dim; ++x) {
    const int k = std::countr_zero(x);
    const std::size_t rest = x & (x - 1);
    std::int64_t delta = 0;
    const int* q = weights_.data() + static_cast<std::size_t>(k) * n_;
    for (std::size_t r = rest; r != 0; r &= r - 1) delta += q[std::countr_zero(r)];
    table[x] = table[rest] + 2 * delta;
  }
  return table;
}

IsingModel to_ising(const QuboInstance& inst) {
  const int n = inst.n();
  IsingModel model{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0),
                   std::vector<double>(n, 0.0), 0.0};
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double q = inst.weight(i, j);
      rowsum += q;
      if (i < j) model.coupling[static_cast<std::size_t>(i) * n + j] = q / 2.0;
    }
    model.field[i] = rowsum / 2.0;
    total += rowsum;
  }
  model.offset = total / 4.0;
  return model;
}

double ising_energy(const IsingModel& model, std::span<const std::uint8_t> bits) {
  if (bits.size() != static_cast<std::size_t>(model.n))
    fail(ErrorCode::dimension_mismatch, "bitstring length " + std::to_string(bits.size()) +
                                            " does not match n=" + std::to_string(model.n));
  double e = model.offset;
  for (int i = 0; i < model.n; ++i) {
    const double si = bits[i] ? 1.0 : -1.0;
    e += model.field[i] * si;
    for (int j = i + 1; j < model.n; ++j) e += model.j(i, j) * si * (bits[j] ? 1.0 : -1.0);
  }
  return e;
}

int hamming_weight(BasisIndex x) { return std::popcount(x); }

std::vector<std::uint8_t> to_bits(BasisIndex index, int n) {
  std::vector<std::uint8_t> bits(n);
  for (int i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>(index >> i & 1u);
  return bits;
}

BasisIndex from_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) fail(ErrorCode::too_large, "bitstrings longer than 64 are unsupported");
  BasisIndex index = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) index |= BasisIndex{1} << i;
  return index;
}

}  // namespace qvlab
