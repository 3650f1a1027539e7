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
#include <span>
#include <vector>

#include "qvlab/qubo.hpp"
#include "qvlab/simulator.hpp"

namespace qvlab {

inline constexpr double kDefaultRho = 0.10;
inline constexpr double kDefaultBeta = 0.10;

// shots == 0 means exact evaluation from the full state.
struct CostConfig {
  double rho = kDefaultRho;
  std::uint64_t shots = 0;

  bool exact() const noexcept { return shots == 0; }
  void validate() const;
};

struct EnergyAtom {
  std::int64_t energy = 0;
  double probability = 0.0;
};

// Atoms sorted by strictly increasing energy.
struct EnergyDistribution {
  std::vector<EnergyAtom> atoms;

  /// Merges equal energies and sorts.
  static EnergyDistribution from_probabilities(std::span<const double> probabilities,
                                               std::span<const std::int64_t> energies);
  double total_probability() const;
};

/// Lower-tail mean of mass `rho`: atoms fully below the rho-quantile count
/// with their whole probability, the quantile atom with the remaining
/// fraction. rho = 1 gives the plain expectation.
double exact_cost(const EnergyDistribution& dist, double rho);

/// Mean of the lowest max(1, floor(rho*K)) sampled energies.
double sampled_cost(const ShotBatch& batch, const QuboInstance& inst, double rho);

/// Total probability on the ground manifold.
double overlap_with_ground(std::span<const double> probabilities, const SpectrumReport& report);
double overlap_with_ground(const StateVector& state, const SpectrumReport& report);
double overlap_with_ground(const ProductState& state, const SpectrumReport& report);

/// 1 iff overlap >= beta.
int success(double overlap, double beta = kDefaultBeta);

/// Lower bound 1 - (1 - beta)^k on finding the solution in k measurements of
/// a successful state.
double repetition_bound(double beta, int k);

// Energy levels of an instance, precomputed once so that the hot path of the
// optimizers reduces a probability vector or a count vector in O(2^n).
class EnergyLevels {
 public:
  explicit EnergyLevels(const QuboInstance& inst);

  std::span<const std::int64_t> energies() const noexcept { return level_energy_; }
  std::span<const std::int64_t> energy_table() const noexcept { return table_; }

  /// Same result as EnergyDistribution::from_probabilities on the full table.
  void distribution_into(std::span<const double> probabilities, EnergyDistribution& out,
                         std::vector<double>& scratch) const;

  /// Same result as sampled_cost on the batch the counts describe.
  double sampled_cost(std::span<const std::uint32_t> counts, std::uint64_t shots, double rho,
                      std::vector<std::uint64_t>& scratch) const;

 private:
  std::vector<std::int64_t> table_;
  std::vector<std::int64_t> level_energy_;
  std::vector<std::uint32_t> level_of_;
};

}  // namespace qvlab
