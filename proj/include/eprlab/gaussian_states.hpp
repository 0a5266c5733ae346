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
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "eprlab/errors.hpp"

// Units: hbar = 1, [q, p] = i, vacuum variance 1/2.
// Phase-space ordering throughout is (q1, p1, q2, p2).
namespace eprlab::gaussian {

using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kUncertaintyTol = 1e-9;

/// Cross moments <q1 q2>, <p1 q2>, <q1 p2>, <p1 p2>.
struct MomentMatrix {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;

  MomentMatrix() = default;
  MomentMatrix(double a, double b, double c, double d);

  bool operator==(const MomentMatrix&) const = default;
};

class GaussianState {
 public:
  /// Requires a finite symmetric covariance. Physicality is not enforced
  /// here; see uncertainty_check.
  explicit GaussianState(const Matrix4& cov, const Vector4& mean = Vector4::Zero());

  const Matrix4& cov() const { return cov_; }
  const Vector4& mean() const { return mean_; }

 private:
  Matrix4 cov_;
  Vector4 mean_;
};

struct UncertaintyReport {
  bool physical;
  double min_eigenvalue;
};

/// Standard symplectic form, block diag([[0,1],[-1,0]], [[0,1],[-1,0]]).
Matrix4 symplectic_form();

/// Two-mode squeezed vacuum with squeezing r.
GaussianState tmsv(double r);

/// Raw (not central) second moments of the party-1 x party-2 block.
MomentMatrix extract_moments(const GaussianState& state);

/// cov + (i/2) Omega >= -kUncertaintyTol.
UncertaintyReport uncertainty_check(const GaussianState& state);

void to_json(nlohmann::json& j, const GaussianState& s);
GaussianState gaussian_state_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const MomentMatrix& m);
MomentMatrix moment_matrix_from_json(const nlohmann::json& j);

}  // namespace eprlab::gaussian
