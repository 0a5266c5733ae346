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

#include "eprlab/correlators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace eprlab {

QuadratureSetting::QuadratureSetting(double alpha) {
  if (!std::isfinite(alpha)) throw ValidationError("quadrature angle must be finite");
  double r = std::fmod(alpha, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // r + 2 pi can round up to 2 pi for tiny negative r.
  if (r >= kTwoPi) r = 0.0;
  alpha_ = r;
}

TimeSetting::TimeSetting(double t) : t_(t) {
  if (!std::isfinite(t)) throw ValidationError("time must be finite");
}

std::string to_string(SettingKind kind) {
  switch (kind) {
    case SettingKind::kDirection: return "direction";
    case SettingKind::kQuadrature: return "quadrature";
    case SettingKind::kTime: return "time";
  }
  return "unknown";
}

}  // namespace eprlab

namespace eprlab::corr {

double spin_correlation(const op::UnitVector3& a, const op::UnitVector3& b) {
  const double matrix_value =
      op::expectation(op::singlet_state(), op::tensor(op::pauli_observable(a), op::pauli_observable(b)));
  const double closed_form = -a.dot(b);
  if (std::abs(matrix_value - closed_form) > kSpinCrossCheckTol) {
    std::ostringstream msg;
    msg << "spin correlator mismatch: matrix " << matrix_value << " vs -a.b " << closed_form;
    throw ConsistencyError(msg.str());
  }
  return matrix_value;
}

double quadrature_correlation(const gaussian::MomentMatrix& m, const QuadratureSetting& a1,
                              const QuadratureSetting& a2) {
  const double c1 = std::cos(a1.alpha()), s1 = std::sin(a1.alpha());
  const double c2 = std::cos(a2.alpha()), s2 = std::sin(a2.alpha());
  return m.A * c1 * c2 - m.B * s1 * c2 - m.C * c1 * s2 + m.D * s1 * s2;
}

double free_evolution_correlation(const gaussian::MomentMatrix& m, const TimeSetting& t1, const TimeSetting& t2) {
  return m.A + m.B * t1.t() + m.C * t2.t() + m.D * t1.t() * t2.t();
}

Eigen::Matrix2d rotation_matrix(double alpha) {
  Eigen::Matrix2d r;
  r << std::cos(alpha), -std::sin(alpha), std::sin(alpha), std::cos(alpha);
  return r;
}

bool is_symplectic(const Eigen::Matrix2d& m, double tol) {
  Eigen::Matrix2d j;
  j << 0.0, 1.0, -1.0, 0.0;
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff() <= tol;
}

CorrelationFunction spin_correlator() {
  return [](const Setting& s1, const Setting& s2) {
    return spin_correlation(setting_as<op::UnitVector3>(s1), setting_as<op::UnitVector3>(s2));
  };
}

CorrelationFunction quadrature_correlator(const gaussian::MomentMatrix& m) {
  return [m](const Setting& s1, const Setting& s2) {
    return quadrature_correlation(m, setting_as<QuadratureSetting>(s1), setting_as<QuadratureSetting>(s2));
  };
}

CorrelationFunction free_evolution_correlator(const gaussian::MomentMatrix& m) {
  return [m](const Setting& s1, const Setting& s2) {
    return free_evolution_correlation(m, setting_as<TimeSetting>(s1), setting_as<TimeSetting>(s2));
  };
}

ChshSettings::ChshSettings(Setting a, Setting a_prime, Setting b, Setting b_prime)
    : a_(std::move(a)), a_prime_(std::move(a_prime)), b_(std::move(b)), b_prime_(std::move(b_prime)) {
  const auto k = kind_of(a_);
  if (kind_of(a_prime_) != k || kind_of(b_) != k || kind_of(b_prime_) != k)
    throw ValidationError("CHSH settings must all be of the same kind");
}

ChshSettings standard_spin_chsh() {
  using std::numbers::pi;
  return ChshSettings(op::UnitVector3::in_xz_plane(0.0), op::UnitVector3::in_xz_plane(pi / 2),
                      op::UnitVector3::in_xz_plane(pi / 4), op::UnitVector3::in_xz_plane(3 * pi / 4));
}

double chsh_value(const CorrelationFunction& corr, const ChshSettings& s) {
  return corr(s.a(), s.b()) - corr(s.a(), s.b_prime()) + corr(s.a_prime(), s.b()) + corr(s.a_prime(), s.b_prime());
}

}  // namespace eprlab::corr
