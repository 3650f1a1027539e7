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

#include <cmath>
#include <cstdint>
#include <span>

#include "qvlab/error.hpp"
#include "qvlab/optim.hpp"

namespace qvlab::detail {

// Forwards to the user objective, counting calls and rejecting non-finite
// values.
class CountingObjective {
 public:
  explicit CountingObjective(const Objective& f) : f_(f) {}

  double operator()(std::span<const double> x) {
    ++count_;
    const double value = f_(x);
    if (!std::isfinite(value)) fail(ErrorCode::non_finite, "objective returned a non-finite value");
    return value;
  }

  std::uint64_t count() const noexcept { return count_; }

 private:
  const Objective& f_;
  std::uint64_t count_ = 0;
};

// Counts consecutive iterations whose tracked value moved by less than ftol.
class ChangeMonitor {
 public:
  ChangeMonitor(double ftol, int patience) : ftol_(ftol), patience_(patience) {}

  bool update(double value) {
    if (has_previous_ && std::abs(value - previous_) < ftol_)
      ++streak_;
    else
      streak_ = 0;
    previous_ = value;
    has_previous_ = true;
    return streak_ >= patience_;
  }

 private:
  double ftol_;
  int patience_;
  int streak_ = 0;
  bool has_previous_ = false;
  double previous_ = 0.0;
};

}  // namespace qvlab::detail
