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

#include "eprlab/operator_core.hpp"

#include <cmath>
#include <sstream>

namespace eprlab::op {

namespace {

void require_supported_dim(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols || (rows != 2 && rows != 4)) {
    std::ostringstream msg;
    msg << "operator must be 2x2 or 4x4, got " << rows << "x" << cols;
    throw ValidationError(msg.str());
  }
}

}  // namespace

UnitVector3::UnitVector3(double a1, double a2, double a3) : c_{a1, a2, a3} {
  const double n2 = a1 * a1 + a2 * a2 + a3 * a3;
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kUnitTol) {
    std::ostringstream msg;
    msg << "not a unit vector: |a|^2 = " << n2;
    throw ValidationError(msg.str());
  }
}

UnitVector3 UnitVector3::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(n) || n == 0.0) throw ValidationError("cannot normalize a zero or non-finite vector");
  return UnitVector3(x / n, y / n, z / n);
}

UnitVector3 UnitVector3::in_xz_plane(double theta) {
  if (!std::isfinite(theta)) throw ValidationError("angle must be finite");
  return UnitVector3(std::sin(theta), 0.0, std::cos(theta));
}

double UnitVector3::dot(const UnitVector3& other) const {
  return c_[0] * other.c_[0] + c_[1] * other.c_[1] + c_[2] * other.c_[2];
}

ComplexOperator::ComplexOperator(CMatrix m, bool hermitian) : m_(std::move(m)), hermitian_(hermitian) {
  require_supported_dim(m_.rows(), m_.cols());
  if (!m_.allFinite()) throw ValidationError("operator entries must be finite");
  if (hermitian_) {
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTol) {
      std::ostringstream msg;
      msg << "operator flagged Hermitian deviates by " << dev;
      throw ValidationError(msg.str());
    }
  }
}

ComplexOperator ComplexOperator::identity(int dim) {
  return ComplexOperator(CMatrix::Identity(dim, dim), true);
}

ComplexOperator ComplexOperator::operator*(const ComplexOperator& rhs) const {
  if (dim() != rhs.dim()) throw ValidationError("dimension mismatch in operator product");
  return ComplexOperator(m_ * rhs.m_);
}

StateVector::StateVector(CVector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() != 2 && v_.size() != 4) throw ValidationError("state dimension must be 2 or 4");
  if (std::abs(v_.norm() - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "state not normalized: |psi| = " << v_.norm();
    throw ValidationError(msg.str());
  }
}

ComplexOperator pauli(int index) {
  const Complex i{0.0, 1.0};
  CMatrix m(2, 2);
  switch (index) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << 0, -i, i, 0; break;
    case 2: m << 1, 0, 0, -1; break;
    default: throw ValidationError("Pauli index must be 0, 1 or 2");
  }
  return ComplexOperator(std::move(m), true);
}

ComplexOperator pauli_observable(const UnitVector3& a) {
  CMatrix m = CMatrix::Zero(2, 2);
  for (int k = 0; k < 3; ++k) m += a[k] * pauli(k).matrix();
  return ComplexOperator(std::move(m), true);
}

StateVector singlet_state() {
  const double h = 1.0 / std::sqrt(2.0);
  CVector v(4);
  v << 0.0, h, -h, 0.0;
  return StateVector(std::move(v));
}

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.dim() != 2 || b.dim() != 2) throw ValidationError("tensor expects two 2x2 operators");
  CMatrix k(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block(2 * i, 2 * j, 2, 2) = a(i, j) * b.matrix();
  return ComplexOperator(std::move(k), a.hermitian() && b.hermitian());
}

double expectation(const StateVector& state, const ComplexOperator& op) {
  if (state.dim() != op.dim()) throw ValidationError("state and operator dimensions differ");
  if (!op.hermitian()) throw ValidationError("expectation requires a Hermitian operator");
  const Complex value = state.amplitudes().dot(op.matrix() * state.amplitudes());
  if (std::abs(value.imag()) > kHermitianTol) {
    std::ostringstream msg;
    msg << "expectation has imaginary part " << value.imag();
    throw ConsistencyError(msg.str());
  }
  return value.real();
}

}  // namespace eprlab::op
