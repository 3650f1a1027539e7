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
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "qvlab/qubo.hpp"

namespace qvlab {

enum class Entanglement { none, linear, compatible, random };

std::string_view to_string(Entanglement kind);
Entanglement entanglement_from_string(std::string_view name);

// Circuit topology: an RY rotation layer, then `layers` repetitions of
// (CZ entangling layer, RY rotation layer).
struct AnsatzSpec {
  int n = 0;
  int layers = 0;
  Entanglement entanglement = Entanglement::none;
  std::vector<std::vector<VertexPair>> entangler_pairs;  // one list per layer 1..L
  std::uint64_t seed = 0;

  std::size_t parameter_count() const { return static_cast<std::size_t>(n) * (layers + 1); }
};

/// Builds the entangler lists. `linear` chains neighbouring qubits,
/// `compatible` copies the instance's edges and `random` draws |E| distinct
/// pairs per layer, frozen from `rng`. A request for zero layers always
/// yields the product-state ansatz (entanglement `none`).
AnsatzSpec build_ansatz(const QuboInstance& inst, Entanglement entanglement, int layers, Rng& rng);

// Rotation angles theta(qubit, layer) for qubit < n and layer <= L, stored
// layer-major so that layer 0 is the contiguous product-state angle list.
class ParameterVector {
 public:
  ParameterVector() = default;
  ParameterVector(int n, int layers, double fill = 0.0);
  ParameterVector(int n, int layers, std::vector<double> values);

  int n() const noexcept { return n_; }
  int layers() const noexcept { return layers_; }
  std::size_t size() const noexcept { return theta_.size(); }

  double& at(int qubit, int layer) { return theta_[static_cast<std::size_t>(layer) * n_ + qubit]; }
  double at(int qubit, int layer) const { return theta_[static_cast<std::size_t>(layer) * n_ + qubit]; }

  std::span<double> values() noexcept { return theta_; }
  std::span<const double> values() const noexcept { return theta_; }

 private:
  int n_ = 0;
  int layers_ = 0;
  std::vector<double> theta_;
};

/// pi/4 on the first rotation layer, `perturbation` on every later one.
ParameterVector init_params(const AnsatzSpec& spec, double perturbation = 1e-2);

/// Variant with later-layer angles uniform in [0, 2*perturbation].
ParameterVector init_params_random(const AnsatzSpec& spec, double perturbation, Rng& rng);

// Real amplitudes over the 2^n computational basis states.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n);  // |0...0>

  static StateVector basis(int n, BasisIndex index);
  static StateVector from_amplitudes(int n, std::vector<double> amplitudes);

  int n() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amp_.size(); }
  std::span<double> amplitudes() noexcept { return amp_; }
  std::span<const double> amplitudes() const noexcept { return amp_; }

  double norm_squared() const;
  std::vector<double> probabilities() const;
  void probabilities_into(std::vector<double>& out) const;

  /// Little-endian float64 dump in basis-index order.
  std::vector<std::uint8_t> to_bytes() const;

 private:
  int n_ = 0;
  std::vector<double> amp_;
};

/// (a0, a1) -> (cos t a0 - sin t a1, sin t a0 + cos t a1) on every pair of
/// amplitudes differing only in `qubit`; |0> maps to cos t|0> + sin t|1>.
void apply_ry(StateVector& state, int qubit, double angle);

/// Negates the amplitudes with both bits set.
void apply_cz(StateVector& state, int i, int j);

/// Runs the full circuit from |0...0>.
StateVector evolve(const AnsatzSpec& spec, const ParameterVector& params);

// Reusable evolver: the entangling layers are folded into precomputed sign
// tables, and the first rotation layer acting on |0...0> is written directly
// as a product state.
class Circuit {
 public:
  explicit Circuit(const AnsatzSpec& spec);

  const AnsatzSpec& spec() const noexcept { return spec_; }

  /// `theta` is a flat ParameterVector::values() view.
  void evolve_into(std::span<const double> theta, StateVector& out) const;

 private:
  AnsatzSpec spec_;
  std::vector<std::vector<double>> sign_tables_;
  std::vector<int> layer_table_;  // layer l-1 -> index into sign_tables_
};

// Separable state: qubit j is cos t_j|0> + sin t_j|1>.
class ProductState {
 public:
  ProductState() = default;
  explicit ProductState(std::span<const double> angles);

  int n() const noexcept { return static_cast<int>(p1_.size()); }
  double probability(BasisIndex index) const;
  double probability_one(int qubit) const { return p1_[qubit]; }
  void probabilities_into(std::vector<double>& out) const;
  std::vector<double> probabilities() const;

 private:
  std::vector<double> p1_;  // sin^2 per qubit
  std::vector<double> p0_;  // cos^2 per qubit
};

ProductState product_state(std::span<const double> angles);

struct ShotBatch {
  int n = 0;
  std::map<BasisIndex, std::uint64_t> counts;
  std::uint64_t total = 0;
};

/// K draws from |amplitude|^2. Throws when the norm is off by more than 1e-6.
ShotBatch sample(const StateVector& state, std::uint64_t shots, Rng& rng);

/// K draws made qubit by qubit from independent Bernoulli(sin^2 t_j).
ShotBatch sample(const ProductState& state, std::uint64_t shots, Rng& rng);

/// Dense per-basis-state counts drawn from a normalized distribution.
void sample_counts(std::span<const double> probabilities, std::uint64_t shots, Rng& rng,
                   std::vector<std::uint32_t>& counts);
void sample_counts(const ProductState& state, std::uint64_t shots, Rng& rng,
                   std::vector<std::uint32_t>& counts);

}  // namespace qvlab
