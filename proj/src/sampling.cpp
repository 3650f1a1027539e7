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

#include "qvlab/error.hpp"
#include "qvlab/simulator.hpp"

namespace qvlab {

namespace {

// 53-bit uniform in [0, 1).
inline double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ShotBatch to_batch(int n, const std::vector<std::uint32_t>& counts, std::uint64_t shots) {
  ShotBatch batch;
  batch.n = n;
  batch.total = shots;
  for (std::size_t x = 0; x < counts.size(); ++x)
    if (counts[x] != 0) batch.counts.emplace(x, counts[x]);
  return batch;
}

}  // namespace

void sample_counts(std::span<const double> probabilities, std::uint64_t shots, Rng& rng,
                   std::vector<std::uint32_t>& counts) {
  if (shots == 0) fail(ErrorCode::invalid_argument, "shot count must be at least 1");
  std::vector<double> cdf(probabilities.size());
  double total = 0.0;
  for (std::size_t x = 0; x < probabilities.size(); ++x) {
    total += probabilities[x];
    cdf[x] = total;
  }
  if (!(std::abs(total - 1.0) <= 1e-6))
    fail(ErrorCode::invalid_argument, "cannot sample from unnormalized state (total probability " +
                                          std::to_string(total) + ")");
  counts.assign(probabilities.size(), 0);
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = unit_uniform(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
}

void sample_counts(const ProductState& state, std::uint64_t shots, Rng& rng,
                   std::vector<std::uint32_t>& counts) {
  if (shots == 0) fail(ErrorCode::invalid_argument, "shot count must be at least 1");
  const int n = state.n();
  counts.assign(std::size_t{1} << n, 0);
  for (std::uint64_t k = 0; k < shots; ++k) {
    BasisIndex x = 0;
    for (int q = 0; q < n; ++q)
      if (unit_uniform(rng) < state.probability_one(q)) x |= BasisIndex{1} << q;
    ++counts[x];
  }
}

ShotBatch sample(const StateVector& state, std::uint64_t shots, Rng& rng) {
  std::vector<std::uint32_t> counts;
  sample_counts(state.probabilities(), shots, rng, counts);
  return to_batch(state.n(), counts, shots);
}

ShotBatch sample(const ProductState& state, std::uint64_t shots, Rng& rng) {
  std::vector<std::uint32_t> counts;
  sample_counts(state, shots, rng, counts);
  return to_batch(state.n(), counts, shots);
}

}  // namespace qvlab
