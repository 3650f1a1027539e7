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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace qvlab {

// Bit i of a basis index is variable (and qubit) i.
using BasisIndex = std::uint64_t;

using Rng = std::mt19937_64;

// Largest variable count for which exhaustive enumeration is attempted.
inline constexpr int kMaxEnumerableVariables = 30;

enum class GraphKind { regular, uniform_random };

std::string_view to_string(GraphKind kind);
GraphKind graph_kind_from_string(std::string_view name);

struct Edge {
  int i = 0;
  int j = 0;
  int w = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

using VertexPair = std::pair<int, int>;

/// Draws `edge_count` distinct unordered pairs over `n` vertices.
///
/// `uniform_random` samples the edge set uniformly without replacement.
/// `regular` produces a graph whose degrees are all equal when 2m/n is an
/// integer, and otherwise differ by at most one (the extra stubs go to a
/// uniformly chosen vertex subset). Construction is a stub-pairing model with
/// collision redraws and full restarts, capped at 10^4 restarts; dense targets
/// are built as the complement of the sparse one.
///
/// Pairs are returned with i < j, sorted lexicographically.
std::vector<VertexPair> generate_graph(int n, int edge_count, GraphKind kind, Rng& rng);

/// Attaches an integer weight drawn uniformly from {-10..-1, 1..10} to each
/// pair, in the order given.
std::vector<Edge> assign_weights(std::span<const VertexPair> pairs, Rng& rng);

// Symmetric zero-diagonal integer QUBO matrix together with its edge list.
class QuboInstance {
 public:
  QuboInstance() = default;

  /// Validates and canonicalizes (i<j, lexicographic order) the edge list.
  /// Throws on out-of-range vertices, self-loops, zero weights or duplicates.
  QuboInstance(int n, std::vector<Edge> edges, std::uint64_t seed = 0,
               GraphKind kind = GraphKind::uniform_random);

  /// Seeded generation: graph first, then weights, from one generator.
  static QuboInstance generate(int n, int edge_count, GraphKind kind, std::uint64_t seed);

  int n() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  GraphKind graph_kind() const noexcept { return kind_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  int weight(int i, int j) const { return weights_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const int> row(int i) const {
    return {weights_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }

  /// 2|E| / (n(n-1)); requires n >= 2.
  double density() const;

  /// Full double sum x^T Q x; an edge with both endpoints set contributes 2w.
  std::int64_t energy(std::span<const std::uint8_t> bits) const;
  std::int64_t energy(BasisIndex index) const;

  /// Energies of all 2^n basis states, indexed by basis index.
  std::vector<std::int64_t> energy_table() const;

  friend bool operator==(const QuboInstance& a, const QuboInstance& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.seed_ == b.seed_ && a.kind_ == b.kind_;
  }

 private:
  int n_ = 0;
  std::vector<int> weights_;
  std::vector<Edge> edges_;
  std::uint64_t seed_ = 0;
  GraphKind kind_ = GraphKind::uniform_random;
};

// Spin form offset + sum_{i<j} J_ij s_i s_j + sum_i h_i s_i with s = 2x - 1.
// All coefficients are multiples of 1/2, so double arithmetic is exact.
struct IsingModel {
  int n = 0;
  std::vector<double> coupling;  // n*n, only i<j entries used
  std::vector<double> field;
  double offset = 0.0;

  double j(int a, int b) const { return coupling[static_cast<std::size_t>(a) * n + b]; }
};

/// Minimization-aligned rewriting: J = Q/2, h = rowsum/2, offset = sum(Q)/4.
IsingModel to_ising(const QuboInstance& inst);

double ising_energy(const IsingModel& model, std::span<const std::uint8_t> bits);

struct SpectrumReport {
  int n = 0;
  std::int64_t ground_energy = 0;
  std::vector<BasisIndex> ground_manifold;  // ascending
  std::int64_t first_excited_energy = 0;
  std::vector<BasisIndex> first_excited_manifold;  // ascending
  int min_hamming_bits = 0;  // d_H = min_hamming_bits / n

  double min_hamming_distance() const { return static_cast<double>(min_hamming_bits) / n; }
};

/// Exhaustive scan over all 2^n assignments. Throws `too_large` above
/// `max_variables` and `degenerate_spectrum` when every assignment has the
/// same energy.
SpectrumReport brute_force_spectrum(const QuboInstance& inst,
                                    int max_variables = kMaxEnumerableVariables);

int hamming_weight(BasisIndex x);

std::vector<std::uint8_t> to_bits(BasisIndex index, int n);
BasisIndex from_bits(std::span<const std::uint8_t> bits);

}  // namespace qvlab
