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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eprlab/gaussian_states.hpp"
#include "eprlab/lhv.hpp"

// Scenario files drive quantum-vs-hidden-variable comparisons. A scenario is
// JSON with a top-level "kind" discriminator; angles are radians.
namespace eprlab::cli {

enum class ScenarioKind { kSpinChsh, kEprQuadrature, kFreeEvolution };

std::string to_string(ScenarioKind kind);

/// Values along one scan axis, either an inclusive linear range or an
/// explicit list.
struct ScanAxis {
  std::vector<double> values;
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::kSpinChsh;
  /// Cross moments for EPR_QUADRATURE / FREE_EVOLUTION.
  gaussian::MomentMatrix moments;
  lhv::QuadratureVariant variant = lhv::QuadratureVariant::kGeneralFactorization;
  /// Setting pairs in evaluation order (outer loop = setting1 for scans).
  std::vector<std::pair<double, double>> pairs;
  /// a, a', b, b' in scenario units.
  std::optional<std::array<double, 4>> chsh;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string csv_name;
  std::string summary_name;
};

inline constexpr double kConsistencyTol = 1e-10;

/// Parses a scenario document; throws ValidationError on any schema problem.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Number or a string such as "pi/4", "3pi/2", "-pi", "0.25".
double parse_real(const nlohmann::json& j);

/// Inclusive linspace; requires count >= 2 and start != stop.
ScanAxis linear_axis(double start, double stop, std::uint64_t count);

struct ResultRow {
  double setting1;
  double setting2;
  double quantum;
  double lhv_exact;
  double lhv_mc;
  double std_error;
  double z_score;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  unsigned workers = 1;
};

struct RunResult {
  std::vector<ResultRow> rows;
  nlohmann::json summary;
  bool consistency_pass = true;
};

/// Seed used for the Monte Carlo estimate of row `index`.
std::uint64_t row_seed(std::uint64_t seed, std::size_t index);

/// Evaluates every setting pair (exact and Monte Carlo). Pure: no file I/O.
RunResult execute(const Scenario& scenario, const RunOptions& options = {});

/// Fixed column order, 17 significant digits.
std::string format_csv(const std::vector<ResultRow>& rows);

void print_table(std::ostream& out, const Scenario& scenario, const RunResult& result);

/// Loads, executes and writes <csv_name> and <summary_name> into out_dir.
/// Returns 0 on success, 1 on input errors, 2 on consistency failures.
int run_scenario(const std::filesystem::path& path, const std::filesystem::path& out_dir, const RunOptions& options,
                 std::ostream& out, std::ostream& err);

}  // namespace eprlab::cli
