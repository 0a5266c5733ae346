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

#include "eprlab/gaussian_states.hpp"

#include <cmath>
#include <sstream>

namespace eprlab::gaussian {

namespace {

constexpr int kQ1 = 0, kP1 = 1, kQ2 = 2, kP2 = 3;

}  // namespace

MomentMatrix::MomentMatrix(double a, double b, double c, double d) : A(a), B(b), C(c), D(d) {
  if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C) || !std::isfinite(D))
    throw ValidationError("moment matrix entries must be finite");
}

GaussianState::GaussianState(const Matrix4& cov, const Vector4& mean) : cov_(cov), mean_(mean) {
  if (!cov_.allFinite() || !mean_.allFinite()) throw ValidationError("covariance and mean must be finite");
  const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    std::ostringstream msg;
    msg << "covariance not symmetric (deviation " << asym << ")";
    throw ValidationError(msg.str());
  }
}

Matrix4 symplectic_form() {
  Matrix4 omega = Matrix4::Zero();
  omega(kQ1, kP1) = 1.0;
  omega(kP1, kQ1) = -1.0;
  omega(kQ2, kP2) = 1.0;
  omega(kP2, kQ2) = -1.0;
  return omega;
}

GaussianState tmsv(double r) {
  if (!std::isfinite(r)) throw ValidationError("squeezing parameter must be finite");
  const double diag = std::cosh(2.0 * r) / 2.0;
  const double cross = std::sinh(2.0 * r) / 2.0;
  Matrix4 cov = Matrix4::Zero();
  cov.diagonal().setConstant(diag);
  cov(kQ1, kQ2) = cov(kQ2, kQ1) = cross;
  cov(kP1, kP2) = cov(kP2, kP1) = -cross;
  return GaussianState(cov);
}

MomentMatrix extract_moments(const GaussianState& s) {
  const auto& c = s.cov();
  const auto& m = s.mean();
  auto raw = [&](int i, int j) { return c(i, j) + m(i) * m(j); };
  return MomentMatrix(raw(kQ1, kQ2), raw(kP1, kQ2), raw(kQ1, kP2), raw(kP1, kP2));
}

UncertaintyReport uncertainty_check(const GaussianState& s) {
  const Eigen::Matrix4cd h =
      s.cov().cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig >= -kUncertaintyTol, min_eig};
}

void to_json(nlohmann::json& j, const GaussianState& s) {
  nlohmann::json cov = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < 4; ++k) row.push_back(s.cov()(i, k));
    cov.push_back(std::move(row));
  }
  nlohmann::json mean = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) mean.push_back(s.mean()(i));
  j = {{"cov", std::move(cov)}, {"mean", std::move(mean)}};
}

GaussianState gaussian_state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("cov")) throw ValidationError("Gaussian state JSON needs a \"cov\" field");
  const auto& cj = j.at("cov");
  if (!cj.is_array() || cj.size() != 4) throw ValidationError("\"cov\" must be a 4x4 array");
  Matrix4 cov;
  for (int i = 0; i < 4; ++i) {
    if (!cj[i].is_array() || cj[i].size() != 4) throw ValidationError("\"cov\" must be a 4x4 array");
    for (int k = 0; k < 4; ++k) {
      if (!cj[i][k].is_number()) throw ValidationError("\"cov\" entries must be numbers");
      cov(i, k) = cj[i][k].get<double>();
    }
  }
  Vector4 mean = Vector4::Zero();
  if (j.contains("mean")) {
    const auto& mj = j.at("mean");
    if (!mj.is_array() || mj.size() != 4) throw ValidationError("\"mean\" must have 4 entries");
    for (int i = 0; i < 4; ++i) {
      if (!mj[i].is_number()) throw ValidationError("\"mean\" entries must be numbers");
      mean(i) = mj[i].get<double>();
    }
  }
  return GaussianState(cov, mean);
}

void to_json(nlohmann::json& j, const MomentMatrix& m) {
  j = {{"A", m.A}, {"B", m.B}, {"C", m.C}, {"D", m.D}};
}

MomentMatrix moment_matrix_from_json(const nlohmann::json& j) {
  auto get = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
      throw ValidationError(std::string("moment matrix needs numeric field \"") + key + "\"");
    return j.at(key).get<double>();
  };
  return MomentMatrix(get("A"), get("B"), get("C"), get("D"));
}

}  // namespace eprlab::gaussian
