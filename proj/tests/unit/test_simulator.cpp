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

#include <gtest/gtest.h>

#include <chrono>
#include <cstring>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "../oracles.hpp"
#include "qvlab/error.hpp"
#include "qvlab/simulator.hpp"

using namespace qvlab;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> a(std::size_t{1} << n);
  double norm = 0;
  for (double& x : a) {
    x = g(rng);
    norm += x * x;
  }
  for (double& x : a) x /= std::sqrt(norm);
  return StateVector::from_amplitudes(n, std::move(a));
}

ParameterVector random_params(int n, int layers, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  ParameterVector p(n, layers);
  for (double& t : p.values()) t = u(rng);
  return p;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

AnsatzSpec spec_for(int n, int layers, Entanglement e, std::uint64_t seed) {
  const QuboInstance inst = QuboInstance::generate(n, std::min(n * (n - 1) / 2, n + 1), GraphKind::uniform_random, seed);
  Rng rng(seed);
  return build_ansatz(inst, e, layers, rng);
}

}  // namespace

TEST(Ansatz, LinearPairs) {
  const QuboInstance inst = QuboInstance::generate(5, 3, GraphKind::uniform_random, 1);
  Rng rng(1);
  const AnsatzSpec s = build_ansatz(inst, Entanglement::linear, 2, rng);
  ASSERT_EQ(s.entangler_pairs.size(), 2u);
  const std::vector<VertexPair> chain{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  for (const auto& layer : s.entangler_pairs) EXPECT_EQ(layer, chain);
  EXPECT_EQ(s.parameter_count(), 15u);
}

TEST(Ansatz, CompatiblePairsCopyEdges) {
  const QuboInstance inst(5, {{0, 2, 3}, {1, 4, -2}});
  Rng rng(1);
  const AnsatzSpec s = build_ansatz(inst, Entanglement::compatible, 3, rng);
  const std::vector<VertexPair> edges{{0, 2}, {1, 4}};
  for (const auto& layer : s.entangler_pairs) EXPECT_EQ(layer, edges);
}

TEST(Ansatz, RandomPairsDistinctEndpoints) {
  const QuboInstance inst = QuboInstance::generate(5, 4, GraphKind::uniform_random, 3);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const AnsatzSpec s = build_ansatz(inst, Entanglement::random, 1, rng);
    ASSERT_EQ(s.entangler_pairs.size(), 1u);
    ASSERT_EQ(s.entangler_pairs[0].size(), 4u);
    std::set<VertexPair> unique;
    for (auto [a, b] : s.entangler_pairs[0]) {
      EXPECT_NE(a, b);
      unique.insert({std::min(a, b), std::max(a, b)});
    }
    EXPECT_EQ(unique.size(), 4u);
  }
}

TEST(Ansatz, RandomLayersDrawnIndependently) {
  const QuboInstance inst = QuboInstance::generate(10, 8, GraphKind::uniform_random, 3);
  Rng rng(4);
  const AnsatzSpec s = build_ansatz(inst, Entanglement::random, 6, rng);
  std::set<std::vector<VertexPair>> layers(s.entangler_pairs.begin(), s.entangler_pairs.end());
  EXPECT_GT(layers.size(), 1u);
}

TEST(Ansatz, InvalidCombinations) {
  const QuboInstance empty(4, {});
  Rng rng(1);
  EXPECT_THROW(build_ansatz(empty, Entanglement::none, 2, rng), Error);
  EXPECT_THROW(build_ansatz(empty, Entanglement::compatible, 1, rng), Error);
  EXPECT_THROW(build_ansatz(empty, Entanglement::linear, -1, rng), Error);
  const AnsatzSpec zero = build_ansatz(empty, Entanglement::linear, 0, rng);
  EXPECT_EQ(zero.entanglement, Entanglement::none);
  EXPECT_TRUE(zero.entangler_pairs.empty());
}

TEST(Params, InitialAngles) {
  const AnsatzSpec s = spec_for(6, 3, Entanglement::linear, 1);
  const ParameterVector p = init_params(s);
  for (int q = 0; q < 6; ++q) {
    EXPECT_EQ(p.at(q, 0), std::numbers::pi / 4);
    for (int l = 1; l <= 3; ++l) EXPECT_EQ(p.at(q, l), 1e-2);
  }
  Rng rng(2);
  const ParameterVector r = init_params_random(s, 1e-2, rng);
  for (int q = 0; q < 6; ++q)
    for (int l = 1; l <= 3; ++l) {
      EXPECT_GE(r.at(q, l), 0.0);
      EXPECT_LE(r.at(q, l), 2e-2);
    }
  EXPECT_THROW(init_params(s, -1.0), Error);
}

TEST(Params, ProductStartIsUniformSuperposition) {
  const AnsatzSpec s = spec_for(12, 0, Entanglement::none, 1);
  const StateVector psi = evolve(s, init_params(s));
  for (double p : psi.probabilities()) ASSERT_NEAR(p, 1.0 / 4096, 1e-15);
}

TEST(Params, ZeroPerturbationMatchesDenseOracle) {
  const QuboInstance inst = QuboInstance::generate(3, 2, GraphKind::uniform_random, 1);
  Rng rng(1);
  const AnsatzSpec s = build_ansatz(inst, Entanglement::linear, 3, rng);
  const ParameterVector p = init_params(s, 0.0);
  const auto ref = oracle::circuit_state(s, p);
  const auto probs = evolve(s, p).probabilities();
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(probs[k], ref[k] * ref[k], 1e-12);
}

TEST(Gates, RotationExamples) {
  StateVector s(1);
  apply_ry(s, 0, 0.0);
  EXPECT_EQ(s.amplitudes()[0], 1.0);
  apply_ry(s, 0, std::numbers::pi / 4);
  EXPECT_NEAR(s.amplitudes()[0], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s.amplitudes()[1], std::sqrt(0.5), 1e-15);
  EXPECT_THROW(apply_ry(s, 1, 0.1), Error);
}

TEST(Gates, RotationMatchesDenseMatrix) {
  for (int q = 0; q < 4; ++q) {
    StateVector s = random_state(4, 10 + q);
    std::vector<double> before(s.amplitudes().begin(), s.amplitudes().end());
    apply_ry(s, q, 0.37);
    const auto ref = oracle::apply(oracle::ry_matrix(4, q, 0.37), before);
    EXPECT_LT(max_abs_diff(s.amplitudes(), ref), 1e-14);
  }
}

TEST(Gates, RotationInverse) {
  for (int q = 0; q < 7; ++q) {
    StateVector s = random_state(7, q);
    std::vector<double> before(s.amplitudes().begin(), s.amplitudes().end());
    apply_ry(s, q, 1.234);
    apply_ry(s, q, -1.234);
    EXPECT_LT(max_abs_diff(s.amplitudes(), before), 1e-12);
  }
}

TEST(Gates, ControlledZ) {
  StateVector s = StateVector::basis(2, 3);
  apply_cz(s, 0, 1);
  EXPECT_EQ(s.amplitudes()[3], -1.0);
  for (BasisIndex b : {0, 1, 2}) {
    StateVector t = StateVector::basis(2, b);
    apply_cz(t, 0, 1);
    EXPECT_EQ(t.amplitudes()[b], 1.0);
  }
  EXPECT_THROW(apply_cz(s, 1, 1), Error);
  EXPECT_THROW(apply_cz(s, 0, 2), Error);
}

TEST(Gates, ControlledZInvolution) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    StateVector s = random_state(6, seed);
    std::vector<double> before(s.amplitudes().begin(), s.amplitudes().end());
    const int a = static_cast<int>(seed % 6), b = static_cast<int>((seed + 1 + seed / 6) % 6);
    if (a == b) continue;
    apply_cz(s, a, b);
    apply_cz(s, a, b);
    EXPECT_EQ(max_abs_diff(s.amplitudes(), before), 0.0);
  }
}

TEST(Evolve, TwoQubitHandExample) {
  const QuboInstance inst(2, {{0, 1, 1}});
  Rng rng(0);
  const AnsatzSpec s = build_ansatz(inst, Entanglement::linear, 1, rng);
  ParameterVector p(2, 1);
  p.at(0, 0) = p.at(1, 0) = std::numbers::pi / 4;
  const StateVector psi = evolve(s, p);
  const double h = 0.5;
  EXPECT_NEAR(psi.amplitudes()[0], h, 1e-15);
  EXPECT_NEAR(psi.amplitudes()[1], h, 1e-15);
  EXPECT_NEAR(psi.amplitudes()[2], h, 1e-15);
  EXPECT_NEAR(psi.amplitudes()[3], -h, 1e-15);
}

TEST(Evolve, MatchesDenseOracle) {
  for (int n = 1; n <= 6; ++n) {
    for (Entanglement e : {Entanglement::linear, Entanglement::random, Entanglement::compatible}) {
      if (n == 1 && e != Entanglement::linear) continue;
      for (int layers : {0, 1, 2, 3}) {
        const AnsatzSpec s = layers == 0 ? spec_for(n, 0, Entanglement::none, n) : spec_for(n, layers, e, n + layers);
        const ParameterVector p = random_params(n, layers, 100 * n + layers);
        const auto ref = oracle::circuit_state(s, p);
        const StateVector psi = evolve(s, p);
        EXPECT_LT(max_abs_diff(psi.amplitudes(), ref), 1e-10) << "n=" << n << " L=" << layers;
        StateVector fast;
        Circuit(s).evolve_into(p.values(), fast);
        EXPECT_LT(max_abs_diff(fast.amplitudes(), ref), 1e-10) << "n=" << n << " L=" << layers;
      }
    }
  }
}

TEST(Evolve, NormPreserved) {
  for (int n : {3, 8, 12}) {
    const AnsatzSpec s = spec_for(n, 3, Entanglement::random, n);
    const StateVector psi = evolve(s, random_params(n, 3, n));
    EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-10);
  }
}

TEST(Evolve, ShapeMismatch) {
  const AnsatzSpec s = spec_for(4, 2, Entanglement::linear, 1);
  EXPECT_THROW(evolve(s, ParameterVector(4, 1)), Error);
  EXPECT_THROW(evolve(s, ParameterVector(3, 2)), Error);
}

TEST(Evolve, TwelveQubitsThreeLayersIsFast) {
  const AnsatzSpec s = spec_for(12, 3, Entanglement::linear, 1);
  const ParameterVector p = random_params(12, 3, 5);
  Circuit circuit(s);
  StateVector out;
  circuit.evolve_into(p.values(), out);
  const int reps = 50;
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) circuit.evolve_into(p.values(), out);
  const double fast = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
  const auto t1 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) out = evolve(s, p);
  const double plain = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count() / reps;
  EXPECT_LT(fast, 5e-3);
  EXPECT_LT(plain, 5e-3);
}

TEST(Product, Probabilities) {
  const std::vector<double> zeros(4, 0.0);
  EXPECT_EQ(ProductState(zeros).probability(0), 1.0);
  const std::vector<double> quarter(6, std::numbers::pi / 4);
  const ProductState u(quarter);
  for (BasisIndex x = 0; x < 64; ++x) EXPECT_NEAR(u.probability(x), 1.0 / 64, 1e-15);
}

TEST(Product, MatchesFullStatevector) {
  for (int n = 1; n <= 10; ++n) {
    const ParameterVector p = random_params(n, 0, n);
    const AnsatzSpec s = spec_for(n, 0, Entanglement::none, n);
    const auto full = evolve(s, p).probabilities();
    const ProductState prod = product_state(p.values());
    const auto fast = prod.probabilities();
    for (BasisIndex x = 0; x < full.size(); ++x) {
      ASSERT_NEAR(prod.probability(x), full[x], 1e-12);
      ASSERT_NEAR(fast[x], full[x], 1e-12);
    }
  }
}

TEST(Sampling, DeterministicState) {
  Rng rng(1);
  const ShotBatch b = sample(StateVector::basis(4, 0b0110), 100, rng);
  ASSERT_EQ(b.counts.size(), 1u);
  EXPECT_EQ(b.counts.at(0b0110), 100u);
  EXPECT_EQ(b.total, 100u);
  const std::vector<double> angles{0.0, std::numbers::pi / 2, std::numbers::pi / 2, 0.0};
  const ShotBatch c = sample(ProductState(angles), 100, rng);
  EXPECT_EQ(c.counts.at(0b0110), 100u);
}

TEST(Sampling, UniformTwoQubitStatistics) {
  StateVector s(2);
  apply_ry(s, 0, std::numbers::pi / 4);
  apply_ry(s, 1, std::numbers::pi / 4);
  Rng rng(7);
  const std::uint64_t k = 400000;
  const ShotBatch b = sample(s, k, rng);
  const double sigma = std::sqrt(k * 0.25 * 0.75);
  std::uint64_t total = 0;
  for (BasisIndex x = 0; x < 4; ++x) {
    EXPECT_NEAR(static_cast<double>(b.counts.at(x)), 1e5, 5 * sigma);
    total += b.counts.at(x);
  }
  EXPECT_EQ(total, k);

  const std::vector<double> quarter(2, std::numbers::pi / 4);
  const ShotBatch c = sample(ProductState(quarter), k, rng);
  for (BasisIndex x = 0; x < 4; ++x) EXPECT_NEAR(static_cast<double>(c.counts.at(x)), 1e5, 5 * sigma);
}

TEST(Sampling, SeededDeterminism) {
  const AnsatzSpec s = spec_for(8, 2, Entanglement::random, 3);
  const StateVector psi = evolve(s, random_params(8, 2, 3));
  Rng a(99), b(99);
  const ShotBatch x = sample(psi, 5000, a), y = sample(psi, 5000, b);
  EXPECT_EQ(x.counts, y.counts);
}

TEST(Sampling, DenseCountsMatchBatch) {
  const AnsatzSpec s = spec_for(6, 1, Entanglement::linear, 3);
  const StateVector psi = evolve(s, random_params(6, 1, 3));
  Rng a(5), b(5);
  const ShotBatch batch = sample(psi, 3000, a);
  std::vector<std::uint32_t> counts;
  sample_counts(psi.probabilities(), 3000, b, counts);
  for (BasisIndex x = 0; x < counts.size(); ++x) {
    const auto it = batch.counts.find(x);
    EXPECT_EQ(counts[x], it == batch.counts.end() ? 0u : it->second);
  }
}

TEST(Sampling, RejectsBadInput) {
  Rng rng(1);
  EXPECT_THROW(sample(StateVector::from_amplitudes(1, {1.0, 1.0}), 10, rng), Error);
  EXPECT_THROW(sample(StateVector(2), 0, rng), Error);
}

TEST(StateVectorDump, LittleEndianDoubles) {
  const StateVector s = StateVector::from_amplitudes(1, {0.6, -0.8});
  const auto bytes = s.to_bytes();
  ASSERT_EQ(bytes.size(), 16u);
  double back[2];
  std::memcpy(back, bytes.data(), 16);
  EXPECT_EQ(back[0], 0.6);
  EXPECT_EQ(back[1], -0.8);
}
