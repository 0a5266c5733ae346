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
#include <complex>

#include <Eigen/Dense>

#include "eprlab/errors.hpp"

namespace eprlab::op {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitTol = 1e-9;

/// Direction in R^3. Construction rejects vectors whose squared norm is not
/// within kUnitTol of one.
class UnitVector3 {
 public:
  UnitVector3(double a1, double a2, double a3);

  /// Rescales any nonzero finite vector onto the sphere.
  static UnitVector3 normalized(double x, double y, double z);
  /// Direction at polar angle theta in the x-z plane: (sin theta, 0, cos theta).
  static UnitVector3 in_xz_plane(double theta);

  double operator[](std::size_t i) const { return c_[i]; }
  const std::array<double, 3>& components() const { return c_; }
  double dot(const UnitVector3& other) const;

  bool operator==(const UnitVector3&) const = default;

 private:
  std::array<double, 3> c_;
};

/// Dense 2x2 or 4x4 complex matrix. When flagged Hermitian the flag is
/// verified at construction.
class ComplexOperator {
 public:
  explicit ComplexOperator(CMatrix m, bool hermitian = false);

  static ComplexOperator identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  bool hermitian() const { return hermitian_; }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  ComplexOperator operator*(const ComplexOperator& rhs) const;

 private:
  CMatrix m_;
  bool hermitian_;
};

/// Normalized pure state of dimension 2 or 4.
class StateVector {
 public:
  explicit StateVector(CVector amplitudes);

  int dim() const { return static_cast<int>(v_.size()); }
  const CVector& amplitudes() const { return v_; }
  Complex overlap(const StateVector& other) const { return v_.dot(other.v_); }
  double norm() const { return v_.norm(); }

 private:
  CVector v_;
};

/// Pauli matrices sigma_1, sigma_2, sigma_3 (index 0..2).
ComplexOperator pauli(int index);

/// a1 sigma_1 + a2 sigma_2 + a3 sigma_3.
ComplexOperator pauli_observable(const UnitVector3& a);

/// (|01> - |10>)/sqrt 2 in the basis |00>,|01>,|10>,|11>, particle 1 first.
StateVector singlet_state();

/// Kronecker product of two 2x2 operators, first factor = particle 1.
ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b);

/// <psi|op|psi> for a Hermitian operator. The imaginary part is checked
/// against kHermitianTol and dropped.
double expectation(const StateVector& state, const ComplexOperator& op);

}  // namespace eprlab::op
