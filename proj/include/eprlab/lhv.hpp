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
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eprlab/gaussian_states.hpp"
#include "eprlab/settings.hpp"

// Local hidden-variable models: a probability space of hidden variables
// lambda plus one real response per party, xi_n(setting_n, lambda), so the
// model correlation is E[xi_1(s1) xi_2(s2)].
namespace eprlab::lhv {

inline constexpr double kWeightTol = 1e-12;
inline constexpr double kSupTol = 1e-12;
/// Below this |A| the closed-form moment-matching solution is refused.
inline constexpr double kDegenerateA = 1e-9;
/// Setting grid used to cross-check closed-form suprema.
inline constexpr int kSupGridSize = 3600;

enum class SampleSpaceKind { kFinite, kGaussianPair };

struct SampleSpace {
  SampleSpaceKind kind;
  std::vector<double> weights;  // empty for kGaussianPair
};

// --- Responses on FINITE spaces (one per atom and party) ---

/// xi(a) = w . a for direction settings.
struct DirectionLinear {
  std::array<double, 3> w;
};
/// xi(a) = +1 if w . a >= 0 else -1.
struct DirectionSign {
  std::array<double, 3> w;
};
/// xi(alpha) = f cos(alpha) - g sin(alpha).
struct AngleTrig {
  double f;
  double g;
};
/// xi(t) = f + g t.
struct TimeLinear {
  double f;
  double g;
};
/// Values at a finite list of settings; any other setting is an error.
struct Tabulated {
  std::vector<std::pair<Setting, double>> entries;
};

using AtomResponse = std::variant<DirectionLinear, DirectionSign, AngleTrig, TimeLinear, Tabulated>;

double evaluate(const AtomResponse& r, const Setting& s);

struct Atom {
  double weight;
  AtomResponse xi1;
  AtomResponse xi2;
};

// --- Responses on the GAUSSIAN_PAIR space (two independent standard normals) ---

enum class ResponseMode { kTrig, kLinearTime };

/// f = F . eta, g = G . eta; xi = f cos(alpha) - g sin(alpha) (kTrig) or
/// xi = f + g t (kLinearTime).
struct LinearResponse {
  std::array<double, 2> f_coeff;
  std::array<double, 2> g_coeff;
  ResponseMode mode;

  /// Coefficients of xi(s, .) in the (eta1, eta2) basis.
  std::array<double, 2> eta_coefficients(const Setting& s) const;
};

struct Unbounded {
  bool operator==(const Unbounded&) const = default;
};
using SupBound = std::variant<double, Unbounded>;

std::string to_string(const SupBound& b);

class HiddenVariableModel {
 public:
  /// Weights must be nonnegative and sum to 1. A finite certificate is
  /// checked against the computed supremum.
  static HiddenVariableModel finite(std::vector<Atom> atoms, std::optional<SupBound> certified = std::nullopt);
  static HiddenVariableModel gaussian_pair(LinearResponse xi1, LinearResponse xi2,
                                           std::optional<SupBound> certified = std::nullopt);

  SampleSpaceKind kind() const { return kind_; }
  SampleSpace space() const;
  const std::vector<Atom>& atoms() const;
  const LinearResponse& linear_xi1() const;
  const LinearResponse& linear_xi2() const;
  const std::optional<SupBound>& certified_sup_bound() const { return certified_; }

 private:
  HiddenVariableModel() = default;

  SampleSpaceKind kind_ = SampleSpaceKind::kFinite;
  std::vector<Atom> atoms_;
  std::optional<std::pair<LinearResponse, LinearResponse>> linear_;
  std::optional<SupBound> certified_;
};

enum class QuadratureVariant { kPaperExplicit, kGeneralFactorization };

/// Three equally weighted atoms, xi1(a, k) = sqrt3 a_k, xi2(b, k) = -sqrt3 b_k.
HiddenVariableModel unbounded_spin_model();

/// Gaussian-pair model whose correlation reproduces quadrature_correlation(m).
/// kPaperExplicit uses the closed-form solution that divides by A and throws
/// DegenerateMoment when |A| <= kDegenerateA. kGeneralFactorization uses
/// party-1 rows [[A, C], [B, D]] and identity party-2 coefficients.
HiddenVariableModel quadrature_model(const gaussian::MomentMatrix& m,
                                     QuadratureVariant variant = QuadratureVariant::kGeneralFactorization);

/// Linear-in-time responses reproducing A + B t1 + C t2 + D t1 t2.
HiddenVariableModel free_evolution_model(const gaussian::MomentMatrix& m);

/// E[xi1(s1) xi2(s2)] evaluated exactly (weighted sum, or coefficient dot
/// product for the Gaussian pair).
double exact_expectation(const HiddenVariableModel& model, const Setting& s1, const Setting& s2);

/// sup |xi_n| over parties, hidden variables and settings.
SupBound sup_bound(const HiddenVariableModel& model);

/// Grid-resolved supremum over kSupGridSize settings per response (finite
/// spaces only). Never exceeds the closed form.
double grid_sup_bound(const HiddenVariableModel& model, int grid_size = kSupGridSize);

enum class Spectrum { kSpinPm1, kQuadratureRealLine };

struct SpectrumReport {
  bool pass;
  SupBound sup;
  std::string detail;
};

SpectrumReport spectrum_compatibility(const HiddenVariableModel& model, Spectrum spectrum);

// JSON (finite models only; Gaussian-pair models are summarized, not
// round-tripped).
nlohmann::json setting_to_json(const Setting& s);
Setting setting_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HiddenVariableModel& model);
HiddenVariableModel finite_model_from_json(const nlohmann::json& j);

}  // namespace eprlab::lhv
