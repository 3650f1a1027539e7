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

#include <algorithm>
#include <map>
#include <set>

#include "../oracles.hpp"
#include "qvlab/error.hpp"
#include "qvlab/qubo.hpp"

using namespace qvlab;

namespace {

QuboInstance random_instance(int n, std::uint64_t seed) {
  Rng rng(seed);
  const int max_edges = n * (n - 1) / 2;
  const int m = max_edges == 0 ? 0 : static_cast<int>(rng() % (max_edges + 1));
  return QuboInstance::generate(n, m, GraphKind::uniform_random, seed);
}

std::vector<int> degrees(int n, const std::vector<VertexPair>& pairs) {
  std::vector<int> d(n, 0);
  for (auto [i, j] : pairs) ++d[i], ++d[j];
  return d;
}

}  // namespace

TEST(Graph, CompleteGraphForEitherKind) {
  for (GraphKind kind : {GraphKind::regular, GraphKind::uniform_random}) {
    Rng rng(3);
    const auto pairs = generate_graph(12, 66, kind, rng);
    ASSERT_EQ(pairs.size(), 66u);
    std::set<VertexPair> unique(pairs.begin(), pairs.end());
    EXPECT_EQ(unique.size(), 66u);
  }
}

TEST(Graph, RegularFourCycle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto pairs = generate_graph(4, 4, GraphKind::regular, rng);
    ASSERT_EQ(pairs.size(), 4u);
    for (int d : degrees(4, pairs)) EXPECT_EQ(d, 2);
    // The only 2-regular simple graphs on 4 vertices are 4-cycles: each
    // vertex misses exactly one other vertex and the misses pair up.
    std::set<VertexPair> present(pairs.begin(), pairs.end());
    std::vector<VertexPair> missing;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (!present.count({i, j})) missing.push_back({i, j});
    ASSERT_EQ(missing.size(), 2u);
    std::set<int> covered{missing[0].first, missing[0].second, missing[1].first, missing[1].second};
    EXPECT_EQ(covered.size(), 4u);
  }
}

TEST(Graph, RegularDegreesConstantWhenIntegral) {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{12, 18}, {12, 30}, {12, 60}, {10, 15}, {9, 9}, {12, 6}}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      const auto pairs = generate_graph(n, m, GraphKind::regular, rng);
      ASSERT_EQ(static_cast<int>(pairs.size()), m);
      std::set<VertexPair> unique(pairs.begin(), pairs.end());
      ASSERT_EQ(unique.size(), pairs.size());
      for (int d : degrees(n, pairs)) EXPECT_EQ(d, 2 * m / n) << "n=" << n << " m=" << m;
    }
  }
}

TEST(Graph, RegularNearRegularOtherwise) {
  Rng rng(11);
  const auto pairs = generate_graph(12, 17, GraphKind::regular, rng);
  ASSERT_EQ(pairs.size(), 17u);
  const auto d = degrees(12, pairs);
  EXPECT_LE(*std::max_element(d.begin(), d.end()) - *std::min_element(d.begin(), d.end()), 1);
}

TEST(Graph, UniformExactCountNoDuplicates) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int m = static_cast<int>(seed % 67);
    const auto pairs = generate_graph(12, m, GraphKind::uniform_random, rng);
    ASSERT_EQ(static_cast<int>(pairs.size()), m);
    std::set<VertexPair> unique(pairs.begin(), pairs.end());
    EXPECT_EQ(unique.size(), pairs.size());
    for (auto [i, j] : pairs) {
      EXPECT_LT(i, j);
      EXPECT_GE(i, 0);
      EXPECT_LT(j, 12);
    }
    EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
  }
}

TEST(Graph, UniformCoversAllPairsEvenly) {
  std::map<VertexPair, int> hits;
  Rng rng(5);
  const int draws = 6000;
  for (int k = 0; k < draws; ++k)
    for (auto p : generate_graph(6, 3, GraphKind::uniform_random, rng)) ++hits[p];
  ASSERT_EQ(hits.size(), 15u);
  const double expected = draws * 3.0 / 15.0;
  for (auto& [p, c] : hits) EXPECT_NEAR(c, expected, 6 * std::sqrt(expected));
}

TEST(Graph, RejectsOutOfRangeCounts) {
  Rng rng(1);
  EXPECT_THROW(generate_graph(5, 11, GraphKind::uniform_random, rng), Error);
  EXPECT_THROW(generate_graph(5, -1, GraphKind::regular, rng), Error);
}

TEST(Weights, NonZeroIntegersInRange) {
  Rng rng(9);
  std::vector<VertexPair> pairs;
  for (int i = 0; i < 30; ++i)
    for (int j = i + 1; j < 30; ++j) pairs.push_back({i, j});
  std::set<int> seen;
  for (const Edge& e : assign_weights(pairs, rng)) {
    EXPECT_NE(e.w, 0);
    EXPECT_GE(e.w, -10);
    EXPECT_LE(e.w, 10);
    seen.insert(e.w);
  }
  EXPECT_EQ(seen.size(), 20u);
}

TEST(Weights, EmptyEdgeListGivesZeroMatrix) {
  const QuboInstance inst = QuboInstance::generate(5, 0, GraphKind::uniform_random, 1);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_EQ(inst.weight(i, j), 0);
}

TEST(Weights, DeterministicUnderSeed) {
  EXPECT_EQ(QuboInstance::generate(6, 5, GraphKind::uniform_random, 42),
            QuboInstance::generate(6, 5, GraphKind::uniform_random, 42));
  EXPECT_FALSE(QuboInstance::generate(6, 5, GraphKind::uniform_random, 42) ==
               QuboInstance::generate(6, 5, GraphKind::uniform_random, 43));
}

TEST(Instance, MatrixInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const QuboInstance inst = random_instance(8, seed);
    std::size_t nonzero = 0;
    for (int i = 0; i < 8; ++i) {
      EXPECT_EQ(inst.weight(i, i), 0);
      for (int j = 0; j < 8; ++j) {
        EXPECT_EQ(inst.weight(i, j), inst.weight(j, i));
        if (i < j && inst.weight(i, j) != 0) ++nonzero;
      }
    }
    EXPECT_EQ(nonzero, inst.edge_count());
    for (const Edge& e : inst.edges()) EXPECT_EQ(inst.weight(e.i, e.j), e.w);
  }
}

TEST(Instance, CanonicalizesAndValidates) {
  const QuboInstance inst(3, {{2, 0, 4}, {1, 0, -2}});
  ASSERT_EQ(inst.edge_count(), 2u);
  EXPECT_EQ(inst.edges()[0], (Edge{0, 1, -2}));
  EXPECT_EQ(inst.edges()[1], (Edge{0, 2, 4}));
  EXPECT_THROW(QuboInstance(3, {{0, 0, 1}}), Error);
  EXPECT_THROW(QuboInstance(3, {{0, 3, 1}}), Error);
  EXPECT_THROW(QuboInstance(3, {{0, 1, 0}}), Error);
  EXPECT_THROW(QuboInstance(3, {{0, 1, 1}, {1, 0, 2}}), Error);
  EXPECT_THROW(QuboInstance(0, {}), Error);
}

TEST(Density, ReferencePoints) {
  EXPECT_DOUBLE_EQ(QuboInstance::generate(12, 66, GraphKind::uniform_random, 1).density(), 1.0);
  EXPECT_NEAR(QuboInstance::generate(12, 59, GraphKind::uniform_random, 1).density(), 0.894, 5e-4);
  EXPECT_NEAR(QuboInstance::generate(12, 17, GraphKind::uniform_random, 1).density(), 0.258, 5e-4);
  EXPECT_NEAR(QuboInstance::generate(12, 3, GraphKind::uniform_random, 1).density(), 0.045, 5e-4);
  EXPECT_THROW(QuboInstance(1, {}).density(), Error);
}

TEST(Energy, HandValues) {
  const QuboInstance two(2, {{0, 1, 3}});
  EXPECT_EQ(two.energy(BasisIndex{0}), 0);
  const std::vector<std::uint8_t> ones{1, 1};
  EXPECT_EQ(two.energy(ones), 6);
  const std::vector<std::uint8_t> wrong{1, 1, 0};
  EXPECT_THROW(two.energy(wrong), Error);
}

TEST(Energy, FixtureMatchesScalarEvaluator) {
  const QuboInstance inst = QuboInstance::generate(4, 4, GraphKind::uniform_random, 2021);
  const std::vector<std::uint8_t> x{1, 0, 1, 1};
  EXPECT_EQ(inst.energy(x), oracle::energy(inst, from_bits(x)));
}

TEST(Energy, TableAndTransposeAgreeWithOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const QuboInstance inst = random_instance(9, seed);
    const auto table = inst.energy_table();
    for (BasisIndex x = 0; x < table.size(); ++x) {
      const long ref = oracle::energy(inst, x);
      ASSERT_EQ(table[x], ref);
      ASSERT_EQ(inst.energy(x), ref);
      ASSERT_EQ(oracle::energy_column_major(inst, x), ref);
    }
  }
}

TEST(Ising, HandExample) {
  const IsingModel m = to_ising(QuboInstance(2, {{0, 1, 4}}));
  EXPECT_EQ(m.j(0, 1), 2.0);
  EXPECT_EQ(m.field[0], 2.0);
  EXPECT_EQ(m.field[1], 2.0);
  EXPECT_EQ(m.offset, 2.0);
  const std::vector<std::uint8_t> x11{1, 1}, x01{0, 1};
  EXPECT_EQ(ising_energy(m, x11), 8.0);
  EXPECT_EQ(ising_energy(m, x01), 0.0);
}

TEST(Ising, ZeroModel) {
  const IsingModel m = to_ising(QuboInstance(3, {}));
  EXPECT_EQ(m.offset, 0.0);
  for (double h : m.field) EXPECT_EQ(h, 0.0);
  for (double j : m.coupling) EXPECT_EQ(j, 0.0);
  const std::vector<std::uint8_t> zeros(3, 0);
  EXPECT_EQ(ising_energy(m, zeros), 0.0);
}

TEST(Ising, ExactEquivalenceOnAllBitstrings) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 10);
    const QuboInstance inst = random_instance(n, 1000 + seed);
    const IsingModel model = to_ising(inst);
    for (BasisIndex x = 0; x < (BasisIndex{1} << n); ++x) {
      const auto bits = to_bits(x, n);
      ASSERT_EQ(ising_energy(model, bits), static_cast<double>(inst.energy(bits))) << "seed " << seed;
    }
  }
}

TEST(Spectrum, TwoVariableHandCase) {
  const SpectrumReport r = brute_force_spectrum(QuboInstance(2, {{0, 1, -5}}));
  EXPECT_EQ(r.ground_energy, -10);
  EXPECT_EQ(r.ground_manifold, std::vector<BasisIndex>{3});
  EXPECT_EQ(r.first_excited_energy, 0);
  EXPECT_EQ(r.first_excited_manifold, (std::vector<BasisIndex>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(r.min_hamming_distance(), 0.5);
}

TEST(Spectrum, ConstantInstanceIsDegenerate) {
  try {
    brute_force_spectrum(QuboInstance(1, {}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_spectrum);
  }
  EXPECT_THROW(brute_force_spectrum(QuboInstance(5, {})), Error);
}

TEST(Spectrum, CapIsEnforced) {
  const QuboInstance inst = QuboInstance::generate(12, 5, GraphKind::uniform_random, 1);
  try {
    brute_force_spectrum(inst, 10);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::too_large);
  }
}

TEST(Spectrum, MatchesNaiveEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 11);
    const QuboInstance inst = random_instance(n, 7000 + seed);
    if (inst.edge_count() == 0) continue;
    const SpectrumReport r = brute_force_spectrum(inst);
    const oracle::Spectrum ref = oracle::spectrum(inst);
    EXPECT_EQ(r.ground_energy, ref.ground);
    EXPECT_EQ(r.first_excited_energy, ref.excited);
    EXPECT_EQ(std::set<BasisIndex>(r.ground_manifold.begin(), r.ground_manifold.end()), ref.ground_set);
    EXPECT_EQ(std::set<BasisIndex>(r.first_excited_manifold.begin(), r.first_excited_manifold.end()),
              ref.excited_set);
    EXPECT_EQ(r.min_hamming_bits, ref.hamming);
    EXPECT_TRUE(std::is_sorted(r.ground_manifold.begin(), r.ground_manifold.end()));
  }
}

TEST(Spectrum, ReportInvariants) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const QuboInstance inst = QuboInstance::generate(12, 1 + static_cast<int>(seed % 66), GraphKind::uniform_random, seed);
    const SpectrumReport r = brute_force_spectrum(inst);
    EXPECT_LT(r.ground_energy, r.first_excited_energy);
    EXPECT_FALSE(r.ground_manifold.empty());
    EXPECT_FALSE(r.first_excited_manifold.empty());
    std::vector<BasisIndex> both;
    std::set_intersection(r.ground_manifold.begin(), r.ground_manifold.end(), r.first_excited_manifold.begin(),
                          r.first_excited_manifold.end(), std::back_inserter(both));
    EXPECT_TRUE(both.empty());
    EXPECT_GE(r.min_hamming_distance(), 1.0 / 12);
    EXPECT_LE(r.min_hamming_distance(), 1.0);
    const auto table = inst.energy_table();
    for (auto e : table) EXPECT_TRUE(e <= r.ground_energy || e >= r.first_excited_energy);
  }
}

TEST(Spectrum, InvariantUnderPositiveScaling) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const QuboInstance inst = QuboInstance::generate(10, 20, GraphKind::uniform_random, seed);
    for (int k : {2, 3, 7}) {
      std::vector<Edge> scaled(inst.edges().begin(), inst.edges().end());
      for (Edge& e : scaled) e.w *= k;
      const SpectrumReport a = brute_force_spectrum(inst);
      const SpectrumReport b = brute_force_spectrum(QuboInstance(10, scaled));
      EXPECT_EQ(a.ground_manifold, b.ground_manifold);
      EXPECT_EQ(a.first_excited_manifold, b.first_excited_manifold);
      EXPECT_EQ(a.min_hamming_bits, b.min_hamming_bits);
      EXPECT_EQ(b.ground_energy, k * a.ground_energy);
    }
  }
}

TEST(Bits, RoundTrip) {
  for (BasisIndex x : {BasisIndex{0}, BasisIndex{5}, BasisIndex{0xABC}}) EXPECT_EQ(from_bits(to_bits(x, 12)), x);
  EXPECT_EQ(hamming_weight(0xFF), 8);
  EXPECT_EQ(to_bits(1, 3), (std::vector<std::uint8_t>{1, 0, 0}));
}

TEST(GraphKindNames, RoundTrip) {
  EXPECT_EQ(graph_kind_from_string(to_string(GraphKind::regular)), GraphKind::regular);
  EXPECT_EQ(graph_kind_from_string(to_string(GraphKind::uniform_random)), GraphKind::uniform_random);
  EXPECT_THROW(graph_kind_from_string("lattice"), Error);
}
