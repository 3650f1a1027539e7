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
#include <numeric>
#include <string>

#include "qvlab/bench.hpp"
#include "qvlab/error.hpp"

namespace qvlab {

namespace {

// Linear interpolation between order statistics.
double quantile_sorted(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t k = 0; k < order.size();) {
    std::size_t end = k;
    while (end + 1 < order.size() && v[order[end + 1]] == v[order[k]]) ++end;
    const double tied = 0.5 * static_cast<double>(k + end) + 1.0;
    for (std::size_t t = k; t <= end; ++t) r[order[t]] = tied;
    k = end + 1;
  }
  return r;
}

ConfidenceInterval interval_of(std::span<const double> values, const AggregateOptions& options,
                               const std::string& key, int stream) {
  if (values.size() >= 2) {
    Rng rng(derive_seed(options.seed, name_tag(key), static_cast<std::uint32_t>(stream)));
    return bootstrap_ci(values, options.level, options.resamples, rng);
  }
  return {values[0], values[0], values[0]};
}

}  // namespace

ConfidenceInterval bootstrap_ci(std::span<const double> values, double level, int resamples, Rng& rng) {
  if (values.size() < 2) fail(ErrorCode::invalid_argument, "bootstrap needs at least two values");
  if (resamples < 1000) fail(ErrorCode::invalid_argument, "bootstrap needs at least 1000 resamples");
  if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::invalid_argument, "confidence level must be in (0, 1)");

  const std::size_t n = values.size();
  ConfidenceInterval ci;
  ci.point = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);

  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> means(static_cast<std::size_t>(resamples));
  for (double& m : means) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += values[pick(rng)];
    m = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - level) / 2.0;
  ci.lo = std::min(quantile_sorted(means, tail), ci.point);
  ci.hi = std::max(quantile_sorted(means, 1.0 - tail), ci.point);
  return ci;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorCode::invalid_argument, "spearman needs two equally sized samples of at least two values");
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  if (sxx == 0 || syy == 0) fail(ErrorCode::invalid_argument, "spearman undefined for a constant sample");
  return sxy / std::sqrt(sxx * syy);
}

int hardness_bin(double d_h, std::span<const double> edges) {
  int bin = 0;
  for (double e : edges)
    if (d_h >= e) ++bin;
  return bin;
}

std::string hardness_bin_label(int bin) { return std::string(1, static_cast<char>('A' + bin)); }

AggregateResult aggregate(std::string key, std::span<const InstanceResult* const> results,
                          const AggregateOptions& options) {
  AggregateResult agg;
  agg.key = std::move(key);
  std::vector<double> successes, evaluations;
  for (const InstanceResult* r : results) {
    if (!r->ok()) continue;
    successes.push_back(r->success);
    evaluations.push_back(static_cast<double>(r->evaluations));
  }
  agg.count = successes.size();
  agg.empty = successes.empty();
  if (agg.empty) return agg;
  agg.success_rate = interval_of(successes, options, agg.key, 0);
  agg.evaluations = interval_of(evaluations, options, agg.key, 1);
  return agg;
}

std::vector<AggregateResult> bin_by_hardness(std::span<const InstanceResult> results,
                                             std::span<const double> edges, const AggregateOptions& options) {
  std::vector<std::vector<const InstanceResult*>> bins(edges.size() + 1);
  for (const InstanceResult& r : results) {
    const auto d = r.d_h();
    if (!d) fail(ErrorCode::invalid_argument, "result without Hamming distance cannot be binned");
    bins[hardness_bin(*d, edges)].push_back(&r);
  }
  std::vector<AggregateResult> out;
  for (std::size_t b = 0; b < bins.size(); ++b)
    out.push_back(aggregate(hardness_bin_label(static_cast<int>(b)), bins[b], options));
  return out;
}

}  // namespace qvlab
