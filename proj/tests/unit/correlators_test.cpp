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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"

namespace eprlab::corr {
namespace {

using gaussian::MomentMatrix;
using std::numbers::pi;

// Frozen from an independent numpy evaluation of the 4x4 expectations.
constexpr double kChshStandard = -2.82842712474619;
constexpr double kTmsvA = 1.8134302039235093;  // sinh(2) / 2

TEST(SpinCorrelation, Examples) {
  const op::UnitVector3 z(0, 0, 1), x(1, 0, 0);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(spin_correlation(z, z), -1.0, 1e-15);
  EXPECT_NEAR(spin_correlation(z, x), 0.0, 1e-15);
  EXPECT_NEAR(spin_correlation(z, op::UnitVector3(0, h, h)), -0.7071067811865474, 1e-12);
}

TEST(SpinCorrelation, MatrixPathAgreesWithClosedForm) {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_unit(gen);
    const auto b = testing::random_unit(gen);
    EXPECT_NEAR(spin_correlation(a, b), -a.dot(b), 1e-10);
  }
}

TEST(QuadratureCorrelation, Examples) {
  EXPECT_EQ(quadrature_correlation(MomentMatrix(1, 0, 0, 0), QuadratureSetting(0), QuadratureSetting(0)), 1.0);
  const MomentMatrix m(kTmsvA, 0, 0, -kTmsvA);
  EXPECT_NEAR(quadrature_correlation(m, QuadratureSetting(pi / 4), QuadratureSetting(pi / 4)), 0.0, 1e-12);
  EXPECT_NEAR(quadrature_correlation(m, QuadratureSetting(0), QuadratureSetting(0)), kTmsvA, 1e-15);
}

TEST(QuadratureCorrelation, MomentumIdentification) {
  // q(3 pi / 2) = p, so both settings at 3 pi / 2 pick out <p1 p2>.
  const MomentMatrix m(1.0, 2.0, 3.0, 4.0);
  EXPECT_NEAR(quadrature_correlation(m, kMomentumAngle, kMomentumAngle), 4.0, 1e-12);
  EXPECT_NEAR(quadrature_correlation(m, kMomentumAngle, kPositionAngle), 2.0, 1e-12);
  EXPECT_NEAR(quadrature_correlation(m, kPositionAngle, kMomentumAngle), 3.0, 1e-12);
}

TEST(QuadratureCorrelation, IsBilinearInTrigPairs) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-5, 5), ang(-10, 10);
  for (int i = 0; i < 100; ++i) {
    const MomentMatrix m(u(gen), u(gen), u(gen), u(gen));
    const double a1 = ang(gen), a2 = ang(gen);
    // Oracle: (c1, s1) M' (c2, s2)^T with M' = [[A, -C], [-B, D]].
    const double c1 = std::cos(a1), s1 = std::sin(a1), c2 = std::cos(a2), s2 = std::sin(a2);
    const double expected = c1 * (m.A * c2 - m.C * s2) + s1 * (-m.B * c2 + m.D * s2);
    EXPECT_NEAR(quadrature_correlation(m, QuadratureSetting(a1), QuadratureSetting(a2)), expected, 1e-12);
  }
}

TEST(QuadratureSetting, CanonicalReduction) {
  EXPECT_EQ(QuadratureSetting(-pi / 2).alpha(), QuadratureSetting(-pi / 2 + kTwoPi).alpha());
  EXPECT_GE(QuadratureSetting(-1e-300).alpha(), 0.0);
  EXPECT_LT(QuadratureSetting(-1e-300).alpha(), kTwoPi);
  EXPECT_THROW(QuadratureSetting(std::nan("")), ValidationError);
}

TEST(QuadratureCorrelation, PeriodicInTwoPi) {
  const MomentMatrix m(1.3, -0.4, 2.2, 0.7);
  // Shifts that are exact in floating point reduce to the identical setting.
  for (double a : {0.0, 0.5, 0.25, 1.0, 1.5}) {
    EXPECT_EQ(QuadratureSetting(a + kTwoPi).alpha(), QuadratureSetting(a).alpha());
    EXPECT_EQ(quadrature_correlation(m, QuadratureSetting(a + kTwoPi), QuadratureSetting(0.3)),
              quadrature_correlation(m, QuadratureSetting(a), QuadratureSetting(0.3)));
  }
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> ang(-20, 20);
  for (int i = 0; i < 1000; ++i) {
    const double a1 = ang(gen), a2 = ang(gen);
    EXPECT_NEAR(quadrature_correlation(m, QuadratureSetting(a1 + kTwoPi), QuadratureSetting(a2)),
                quadrature_correlation(m, QuadratureSetting(a1), QuadratureSetting(a2)), 1e-12);
  }
}

TEST(QuadratureCorrelation, TmsvIsCosineOfSum) {
  for (double r : {0.0, 0.3, 1.0, 2.0}) {
    const auto m = gaussian::extract_moments(gaussian::tmsv(r));
    for (int i = 0; i < 72; ++i)
      for (int j = 0; j < 72; ++j) {
        const double a1 = kTwoPi * i / 72, a2 = kTwoPi * j / 72;
        EXPECT_NEAR(quadrature_correlation(m, QuadratureSetting(a1), QuadratureSetting(a2)), m.A * std::cos(a1 + a2),
                    1e-12 * std::max(1.0, std::abs(m.A)));
      }
  }
}

TEST(FreeEvolutionCorrelation, Examples) {
  const MomentMatrix m(1, 2, 3, 4);
  EXPECT_EQ(free_evolution_correlation(m, TimeSetting(0), TimeSetting(0)), 1.0);
  EXPECT_EQ(free_evolution_correlation(m, TimeSetting(1), TimeSetting(1)), 10.0);
  EXPECT_EQ(free_evolution_correlation(MomentMatrix(1, 0, 0, -1), TimeSetting(2), TimeSetting(3)), -5.0);
  EXPECT_THROW(TimeSetting{INFINITY}, ValidationError);
}

TEST(Rotation, IsSymplectic) {
  for (int i = 0; i <= 1000; ++i) {
    const double a = -10.0 + 20.0 * i / 1000;
    const auto r = rotation_matrix(a);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
    EXPECT_TRUE(is_symplectic(r));
  }
  Eigen::Matrix2d squash;
  squash << 2.0, 0.0, 0.0, 1.0;
  EXPECT_FALSE(is_symplectic(squash));
}

TEST(Chsh, StandardSpinSettings) {
  const double s = chsh_value(spin_correlator(), standard_spin_chsh());
  EXPECT_NEAR(s, kChshStandard, 1e-12);
  EXPECT_NEAR(std::abs(s), 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(Chsh, TrivialCorrelators) {
  const auto s = standard_spin_chsh();
  EXPECT_EQ(chsh_value([](const Setting&, const Setting&) { return 0.0; }, s), 0.0);
  EXPECT_EQ(chsh_value([](const Setting&, const Setting&) { return 1.0; }, s), 2.0);
}

TEST(Chsh, KindMismatch) {
  EXPECT_THROW(ChshSettings(op::UnitVector3(0, 0, 1), QuadratureSetting(0), op::UnitVector3(0, 0, 1),
                            op::UnitVector3(0, 0, 1)),
               ValidationError);
  const ChshSettings angles(QuadratureSetting(0), QuadratureSetting(1), QuadratureSetting(2), QuadratureSetting(3));
  EXPECT_THROW(chsh_value(spin_correlator(), angles), ValidationError);
}

TEST(Chsh, TsirelsonCeilingOnCoarseScan) {
  constexpr int n = 100;
  std::vector<double> table(n * n);
  const auto corr = [](double t1, double t2) { return -std::cos(t1 - t2); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i * n + j] = corr(kTwoPi * i / n, kTwoPi * j / n);
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int ap = 0; ap < n; ++ap)
      for (int b = 0; b < n; ++b)
        for (int bp = 0; bp < n; ++bp) {
          const double s = table[a * n + b] - table[a * n + bp] + table[ap * n + b] + table[ap * n + bp];
          worst = std::max(worst, std::abs(s));
        }
  EXPECT_LE(worst, 2.0 * std::sqrt(2.0) + 1e-9);
  EXPECT_GT(worst, 2.8);
}

}  // namespace
}  // namespace eprlab::corr
