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
#include <cmath>
#include <string>

#include "qvlab/cost.hpp"
#include "qvlab/error.hpp"

namespace qvlab {

namespace {

void check_rho(double rho) {
  if (!(rho > 0.0 && rho <= 1.0))
    fail(ErrorCode::invalid_argument, "rho must lie in (0, 1], got " + std::to_string(rho));
}

std::uint64_t tail_count(std::uint64_t shots, double rho) {
  const auto m = static_cast<std::uint64_t>(std::floor(rho * static_cast<double>(shots)));
  return std::max<std::uint64_t>(1, m);
}

}  // namespace

void CostConfig::validate() const { check_rho(rho); }

EnergyDistribution EnergyDistribution::from_probabilities(std::span<const double> probabilities,
                                                          std::span<const std::int64_t> energies) {
  if (probabilities.size() != energies.size())
    fail(ErrorCode::dimension_mismatch, "probability and energy tables differ in size");
  std::vector<std::size_t> order(energies.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
  EnergyDistribution dist;
  for (std::size_t k : order) {
    if (!dist.atoms.empty() && dist.atoms.back().energy == energies[k])
      dist.atoms.back().probability += probabilities[k];
    else
      dist.atoms.push_back({energies[k], probabilities[k]});
  }
  return dist;
}

double EnergyDistribution::total_probability() const {
  double total = 0.0;
  for (const EnergyAtom& a : atoms) total += a.probability;
  return total;
}

double exact_cost(const EnergyDistribution& dist, double rho) {
  check_rho(rho);
  if (dist.atoms.empty()) fail(ErrorCode::invalid_argument, "empty energy distribution");
  if (rho == 1.0) {
    double mean = 0.0;
    for (const EnergyAtom& a : dist.atoms) mean += a.probability * static_cast<double>(a.energy);
    return mean;
  }
  double mass = 0.0, acc = 0.0;
  for (const EnergyAtom& a : dist.atoms) {
    const double take = std::min(a.probability, rho - mass);
    acc += take * static_cast<double>(a.energy);
    mass += take;
    if (mass >= rho) return acc / rho;
  }
  // Rounding left the total a hair below rho; the top atom absorbs the rest.
  acc += (rho - mass) * static_cast<double>(dist.atoms.back().energy);
  return acc / rho;
}

double sampled_cost(const ShotBatch& batch, const QuboInstance& inst, double rho) {
  check_rho(rho);
  if (batch.total == 0 || batch.counts.empty()) fail(ErrorCode::invalid_argument, "empty shot batch");
  if (batch.n != inst.n()) fail(ErrorCode::dimension_mismatch, "shot batch width does not match instance");
  std::vector<std::int64_t> energies;
  energies.reserve(batch.total);
  for (auto [x, count] : batch.counts) energies.insert(energies.end(), count, inst.energy(x));
  if (energies.size() != batch.total)
    fail(ErrorCode::invalid_argument, "shot batch counts do not sum to its total");
  std::sort(energies.begin(), energies.end());
  const std::uint64_t m = tail_count(batch.total, rho);
  std::int64_t sum = 0;
  for (std::uint64_t k = 0; k < m; ++k) sum += energies[k];
  return static_cast<double>(sum) / static_cast<double>(m);
}

double overlap_with_ground(std::span<const double> probabilities, const SpectrumReport& report) {
  if (probabilities.size() != std::size_t{1} << report.n)
    fail(ErrorCode::dimension_mismatch, "state dimension does not match spectrum");
  double overlap = 0.0;
  for (BasisIndex g : report.ground_manifold) overlap += probabilities[g];
  return overlap;
}

double overlap_with_ground(const StateVector& state, const SpectrumReport& report) {
  if (state.n() != report.n) fail(ErrorCode::dimension_mismatch, "state width does not match spectrum");
  double overlap = 0.0;
  auto amp = state.amplitudes();
  for (BasisIndex g : report.ground_manifold) overlap += amp[g] * amp[g];
  return overlap;
}

double overlap_with_ground(const ProductState& state, const SpectrumReport& report) {
  if (state.n() != report.n) fail(ErrorCode::dimension_mismatch, "state width does not match spectrum");
  double overlap = 0.0;
  for (BasisIndex g : report.ground_manifold) overlap += state.probability(g);
  return overlap;
}

int success(double overlap, double beta) { return overlap >= beta ? 1 : 0; }

double repetition_bound(double beta, int k) { return 1.0 - std::pow(1.0 - beta, k); }

EnergyLevels::EnergyLevels(const QuboInstance& inst) : table_(inst.energy_table()) {
  level_energy_ = table_;
  std::sort(level_energy_.begin(), level_energy_.end());
  level_energy_.erase(std::unique(level_energy_.begin(), level_energy_.end()), level_energy_.end());
  level_of_.resize(table_.size());
  for (std::size_t x = 0; x < table_.size(); ++x)
    level_of_[x] = static_cast<std::uint32_t>(
        std::lower_bound(level_energy_.begin(), level_energy_.end(), table_[x]) - level_energy_.begin());
}

void EnergyLevels::distribution_into(std::span<const double> probabilities, EnergyDistribution& out,
                                     std::vector<double>& scratch) const {
  if (probabilities.size() != table_.size())
    fail(ErrorCode::dimension_mismatch, "probability vector does not match instance size");
  scratch.assign(level_energy_.size(), 0.0);
  for (std::size_t x = 0; x < probabilities.size(); ++x) scratch[level_of_[x]] += probabilities[x];
  out.atoms.resize(level_energy_.size());
  for (std::size_t l = 0; l < level_energy_.size(); ++l) out.atoms[l] = {level_energy_[l], scratch[l]};
}

double EnergyLevels::sampled_cost(std::span<const std::uint32_t> counts, std::uint64_t shots, double rho,
                                  std::vector<std::uint64_t>& scratch) const {
  check_rho(rho);
  if (shots == 0) fail(ErrorCode::invalid_argument, "empty shot batch");
  scratch.assign(level_energy_.size(), 0);
  for (std::size_t x = 0; x < counts.size(); ++x) scratch[level_of_[x]] += counts[x];
  const std::uint64_t m = tail_count(shots, rho);
  std::uint64_t taken = 0;
  std::int64_t sum = 0;
  for (std::size_t l = 0; l < scratch.size() && taken < m; ++l) {
    const std::uint64_t take = std::min(scratch[l], m - taken);
    sum += static_cast<std::int64_t>(take) * level_energy_[l];
    taken += take;
  }
  return static_cast<double>(sum) / static_cast<double>(m);
}

}  // namespace qvlab
