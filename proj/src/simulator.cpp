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

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "qvlab/error.hpp"
#include "qvlab/simulator.hpp"

namespace qvlab {

std::string_view to_string(Entanglement kind) {
  switch (kind) {
    case Entanglement::none: return "none";
    case Entanglement::linear: return "linear";
    case Entanglement::compatible: return "compatible";
    case Entanglement::random: return "random";
  }
  return "none";
}

Entanglement entanglement_from_string(std::string_view name) {
  if (name == "none" || name == "product") return Entanglement::none;
  if (name == "linear") return Entanglement::linear;
  if (name == "compatible") return Entanglement::compatible;
  if (name == "random") return Entanglement::random;
  fail(ErrorCode::invalid_argument, "unknown entanglement '" + std::string(name) + "'");
}

AnsatzSpec build_ansatz(const QuboInstance& inst, Entanglement entanglement, int layers, Rng& rng) {
  if (layers < 0) fail(ErrorCode::invalid_argument, "layer count must be non-negative");
  if (entanglement == Entanglement::none && layers > 0)
    fail(ErrorCode::invalid_argument, "product-state ansatz cannot have entangling layers");
  AnsatzSpec spec;
  spec.n = inst.n();
  spec.layers = layers;
  spec.entanglement = layers == 0 ? Entanglement::none : entanglement;
  if (layers == 0) return spec;

  std::vector<VertexPair> fixed;
  switch (spec.entanglement) {
    case Entanglement::linear:
      for (int q = 0; q + 1 < spec.n; ++q) fixed.emplace_back(q, q + 1);
      break;
    case Entanglement::compatible:
      if (inst.edge_count() == 0)
        fail(ErrorCode::invalid_argument, "compatible entanglement needs at least one edge");
      for (const Edge& e : inst.edges()) fixed.emplace_back(e.i, e.j);
      break;
    default:
      break;
  }
  for (int l = 0; l < layers; ++l) {
    if (spec.entanglement == Entanglement::random)
      spec.entangler_pairs.push_back(
          generate_graph(spec.n, static_cast<int>(inst.edge_count()), GraphKind::uniform_random, rng));
    else
      spec.entangler_pairs.push_back(fixed);
  }
  return spec;
}

ParameterVector::ParameterVector(int n, int layers, double fill)
    : n_(n), layers_(layers), theta_(static_cast<std::size_t>(n) * (layers + 1), fill) {}

ParameterVector::ParameterVector(int n, int layers, std::vector<double> values)
    : n_(n), layers_(layers), theta_(std::move(values)) {
  if (theta_.size() != static_cast<std::size_t>(n) * (layers + 1))
    fail(ErrorCode::dimension_mismatch, "parameter vector needs n*(L+1) = " +
                                            std::to_string(static_cast<std::size_t>(n) * (layers + 1)) +
                                            " angles, got " + std::to_string(theta_.size()));
}

ParameterVector init_params(const AnsatzSpec& spec, double perturbation) {
  if (perturbation < 0) fail(ErrorCode::invalid_argument, "perturbation must be non-negative");
  ParameterVector p(spec.n, spec.layers, perturbation);
  for (int q = 0; q < spec.n; ++q) p.at(q, 0) = std::numbers::pi / 4;
  return p;
}

ParameterVector init_params_random(const AnsatzSpec& spec, double perturbation, Rng& rng) {
  ParameterVector p = init_params(spec, perturbation);
  std::uniform_real_distribution<double> jitter(0.0, 2.0 * perturbation);
  for (int l = 1; l <= spec.layers; ++l)
    for (int q = 0; q < spec.n; ++q) p.at(q, l) = jitter(rng);
  return p;
}

StateVector::StateVector(int n) : n_(n), amp_(std::size_t{1} << n, 0.0) { amp_[0] = 1.0; }

StateVector StateVector::basis(int n, BasisIndex index) {
  StateVector s(n);
  if (index >= s.dimension()) fail(ErrorCode::invalid_argument, "basis index out of range");
  s.amp_[0] = 0.0;
  s.amp_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int n, std::vector<double> amplitudes) {
  if (amplitudes.size() != std::size_t{1} << n)
    fail(ErrorCode::dimension_mismatch, "amplitude vector must have 2^n entries");
  StateVector s;
  s.n_ = n;
  s.amp_ = std::move(amplitudes);
  return s;
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (double a : amp_) sum += a * a;
  return sum;
}

void StateVector::probabilities_into(std::vector<double>& out) const {
  out.resize(amp_.size());
  for (std::size_t k = 0; k < amp_.size(); ++k) out[k] = amp_[k] * amp_[k];
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> out;
  probabilities_into(out);
  return out;
}

std::vector<std::uint8_t> StateVector::to_bytes() const {
  static_assert(std::endian::native == std::endian::little, "amplitude dump assumes little-endian host");
  std::vector<std::uint8_t> bytes(amp_.size() * sizeof(double));
  std::memcpy(bytes.data(), amp_.data(), bytes.size());
  return bytes;
}

namespace {

void check_qubit(const StateVector& state, int q) {
  if (q < 0 || q >= state.n())
    fail(ErrorCode::invalid_argument,
         "qubit " + std::to_string(q) + " out of range for n=" + std::to_string(state.n()));
}

template <std::size_t Stride>
void rotate_fixed(double* amp, std::size_t dim, double c, double s) {
  for (std::size_t base = 0; base < dim; base += 2 * Stride) {
    double* __restrict lo = amp + base;
    double* __restrict hi = lo + Stride;
    for (std::size_t k = 0; k < Stride; ++k) {
      const double a0 = lo[k], a1 = hi[k];
      lo[k] = c * a0 - s * a1;
      hi[k] = s * a0 + c * a1;
    }
  }
}

void rotate(double* amp, std::size_t dim, int qubit, double c, double s) {
  // Short inner loops do not vectorize; give the low qubits fixed strides.
  switch (qubit) {
    case 0: return rotate_fixed<1>(amp, dim, c, s);
    case 1: return rotate_fixed<2>(amp, dim, c, s);
    case 2: return rotate_fixed<4>(amp, dim, c, s);
    default: break;
  }
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    double* __restrict lo = amp + base;
    double* __restrict hi = lo + stride;
    for (std::size_t k = 0; k < stride; ++k) {
      const double a0 = lo[k], a1 = hi[k];
      lo[k] = c * a0 - s * a1;
      hi[k] = s * a0 + c * a1;
    }
  }
}

}  // namespace

void apply_ry(StateVector& state, int qubit, double angle) {
  check_qubit(state, qubit);
  rotate(state.amplitudes().data(), state.dimension(), qubit, std::cos(angle), std::sin(angle));
}

void apply_cz(StateVector& state, int i, int j) {
  check_qubit(state, i);
  check_qubit(state, j);
  if (i == j) fail(ErrorCode::invalid_argument, "CZ needs two distinct qubits");
  const BasisIndex mask = (BasisIndex{1} << i) | (BasisIndex{1} << j);
  auto amp = state.amplitudes();
  for (BasisIndex x = 0; x < amp.size(); ++x)
    if ((x & mask) == mask) amp[x] = -amp[x];
}

StateVector evolve(const AnsatzSpec& spec, const ParameterVector& params) {
  if (params.n() != spec.n || params.layers() != spec.layers)
    fail(ErrorCode::dimension_mismatch, "parameter shape does not match ansatz");
  StateVector state(spec.n);
  for (int q = 0; q < spec.n; ++q) apply_ry(state, q, params.at(q, 0));
  for (int l = 1; l <= spec.layers; ++l) {
    for (auto [i, j] : spec.entangler_pairs[l - 1]) apply_cz(state, i, j);
    for (int q = 0; q < spec.n; ++q) apply_ry(state, q, params.at(q, l));
  }
  return state;
}

Circuit::Circuit(const AnsatzSpec& spec) : spec_(spec) {
  if (static_cast<int>(spec.entangler_pairs.size()) != spec.layers)
    fail(ErrorCode::dimension_mismatch, "ansatz needs one entangler list per layer");
  const std::size_t dim = std::size_t{1} << spec.n;
  std::vector<const std::vector<VertexPair>*> seen;
  for (int l = 0; l < spec.layers; ++l) {
    const auto& pairs = spec.entangler_pairs[l];
    int found = -1;
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (*seen[k] == pairs) found = static_cast<int>(k);
    if (found < 0) {
      std::vector<double> table(dim, 1.0);
      for (auto [i, j] : pairs) {
        if (i == j || i < 0 || j < 0 || i >= spec.n || j >= spec.n)
          fail(ErrorCode::invalid_argument, "invalid entangler pair");
        const BasisIndex mask = (BasisIndex{1} << i) | (BasisIndex{1} << j);
        for (BasisIndex x = 0; x < dim; ++x)
          if ((x & mask) == mask) table[x] = -table[x];
      }
      found = static_cast<int>(sign_tables_.size());
      sign_tables_.push_back(std::move(table));
      seen.push_back(&pairs);
    }
    layer_table_.push_back(found);
  }
}

void Circuit::evolve_into(std::span<const double> theta, StateVector& out) const {
  const int n = spec_.n;
  if (theta.size() != spec_.parameter_count())
    fail(ErrorCode::dimension_mismatch, "parameter count does not match ansatz");
  if (out.n() != n || out.dimension() != std::size_t{1} << n) out = StateVector(n);

  auto amp = out.amplitudes();
  const std::size_t dim = amp.size();
  // First rotation layer on |0...0> is a product state; build it by doubling.
  amp[0] = 1.0;
  for (int q = 0; q < n; ++q) {
    const double c = std::cos(theta[q]), s = std::sin(theta[q]);
    const std::size_t half = std::size_t{1} << q;
    for (std::size_t x = 0; x < half; ++x) {
      amp[x + half] = amp[x] * s;
      amp[x] *= c;
    }
  }
  for (int l = 1; l <= spec_.layers; ++l) {
    const double* sign = sign_tables_[layer_table_[l - 1]].data();
    for (std::size_t x = 0; x < dim; ++x) amp[x] *= sign[x];
    const double* layer = theta.data() + static_cast<std::size_t>(l) * n;
    for (int q = 0; q < n; ++q) rotate(amp.data(), dim, q, std::cos(layer[q]), std::sin(layer[q]));
  }
}

ProductState::ProductState(std::span<const double> angles) {
  p0_.reserve(angles.size());
  p1_.reserve(angles.size());
  for (double t : angles) {
    const double c = std::cos(t), s = std::sin(t);
    p0_.push_back(c * c);
    p1_.push_back(s * s);
  }
}

double ProductState::probability(BasisIndex index) const {
  double p = 1.0;
  for (std::size_t q = 0; q < p1_.size(); ++q) p *= (index >> q & 1u) ? p1_[q] : p0_[q];
  return p;
}

void ProductState::probabilities_into(std::vector<double>& out) const {
  out.assign(std::size_t{1} << p1_.size(), 0.0);
  out[0] = 1.0;
  for (std::size_t q = 0; q < p1_.size(); ++q) {
    const std::size_t half = std::size_t{1} << q;
    for (std::size_t x = 0; x < half; ++x) {
      out[x + half] = out[x] * p1_[q];
      out[x] *= p0_[q];
    }
  }
}

std::vector<double> ProductState::probabilities() const {
  std::vector<double> out;
  probabilities_into(out);
  return out;
}

ProductState product_state(std::span<const double> angles) { return ProductState(angles); }

}  // namespace qvlab
