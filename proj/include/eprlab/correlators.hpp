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

#include <functional>

#include <Eigen/Dense>

#include "eprlab/gaussian_states.hpp"
#include "eprlab/operator_core.hpp"
#include "eprlab/settings.hpp"

namespace eprlab::corr {

inline constexpr double kSpinCrossCheckTol = 1e-10;

/// <singlet| sigma(a) (x) sigma(b) |singlet>, evaluated as a 4x4 matrix
/// expectation and cross-checked against -a.b. Throws ConsistencyError if the
/// two disagree by more than kSpinCrossCheckTol.
double spin_correlation(const op::UnitVector3& a, const op::UnitVector3& b);

/// <q1(alpha1) q2(alpha2)> from the cross moments:
///   A c1 c2 - B s1 c2 - C c1 s2 + D s1 s2.
double quadrature_correlation(const gaussian::MomentMatrix& m, const QuadratureSetting& a1,
                              const QuadratureSetting& a2);

/// <q1(t1) q2(t2)> with q(t) = q + p t: A + B t1 + C t2 + D t1 t2.
double free_evolution_correlation(const gaussian::MomentMatrix& m, const TimeSetting& t1, const TimeSetting& t2);

/// Phase-space map (q, p) -> (q(alpha), p(alpha)).
Eigen::Matrix2d rotation_matrix(double alpha);

/// M^T J M == J with J = [[0,1],[-1,0]].
bool is_symplectic(const Eigen::Matrix2d& m, double tol = 1e-12);

using CorrelationFunction = std::function<double(const Setting&, const Setting&)>;

/// Variant-dispatching wrappers around the three quantum correlators.
CorrelationFunction spin_correlator();
CorrelationFunction quadrature_correlator(const gaussian::MomentMatrix& m);
CorrelationFunction free_evolution_correlator(const gaussian::MomentMatrix& m);

/// Four settings of one kind: a, a', b, b'.
class ChshSettings {
 public:
  ChshSettings(Setting a, Setting a_prime, Setting b, Setting b_prime);

  const Setting& a() const { return a_; }
  const Setting& a_prime() const { return a_prime_; }
  const Setting& b() const { return b_; }
  const Setting& b_prime() const { return b_prime_; }
  SettingKind kind() const { return kind_of(a_); }

 private:
  Setting a_, a_prime_, b_, b_prime_;
};

/// Coplanar x-z directions at 0, 90, 45 and 135 degrees.
ChshSettings standard_spin_chsh();

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_value(const CorrelationFunction& corr, const ChshSettings& s);

}  // namespace eprlab::corr
