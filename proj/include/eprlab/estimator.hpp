// Copyright 2026 The eprlab Authors
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

#include "eprlab/lhv.hpp"
#include "eprlab/settings.hpp"

namespace eprlab::est {

/// Draws are reduced in fixed blocks of this size, in block order, so the
/// result does not depend on how blocks are spread across workers.
inline constexpr std::uint64_t kBlockSize = 4096;

struct CorrelationEstimate {
  double mean;
  double std_error;  // sample std dev (n - 1 denominator) / sqrt(n)
  std::uint64_t n;
  std::uint64_t seed;
};

struct McOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 1;
};

/// Monte Carlo estimate of E[xi1(s1) xi2(s2)] from n draws of a
/// counter-based generator keyed by (seed, draw index).
CorrelationEstimate mc_estimate(const lhv::HiddenVariableModel& model, const Setting& s1, const Setting& s2,
                                std::uint64_t n, std::uint64_t seed, McOptions options = {});

struct ComparisonReport {
  double exact;
  CorrelationEstimate estimate;
  /// (mean - exact) / std_error; 0 for a zero-variance estimate that matches,
  /// +-inf (and inconsistent = true) for one that does not.
  double z_score;
  bool inconsistent;
};

/// Relative tolerance for "means equal" when the estimate has zero variance.
inline constexpr double kZeroVarianceMatchTol = 1e-12;

ComparisonReport compare(double exact, const CorrelationEstimate& est);

}  // namespace eprlab::est
