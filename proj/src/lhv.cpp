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

#include "eprlab/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace eprlab::lhv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double dot3(const std::array<double, 3>& w, const op::UnitVector3& a) {
  return w[0] * a[0] + w[1] * a[1] + w[2] * a[2];
}

bool is_zero(const std::array<double, 2>& v) { return v[0] == 0.0 && v[1] == 0.0; }

bool all_finite(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

void validate_response(const AtomResponse& r) {
  const bool ok = std::visit(
      Overloaded{
          [](const DirectionLinear& d) { return all_finite({d.w[0], d.w[1], d.w[2]}); },
          [](const DirectionSign& d) { return all_finite({d.w[0], d.w[1], d.w[2]}); },
          [](const AngleTrig& t) { return all_finite({t.f, t.g}); },
          [](const TimeLinear& t) { return all_finite({t.f, t.g}); },
          [](const Tabulated& t) {
            return std::all_of(t.entries.begin(), t.entries.end(),
                               [](const auto& e) { return std::isfinite(e.second); });
          },
      },
      r);
  if (!ok) throw ValidationError("response coefficients must be finite");
}

void validate_linear(const LinearResponse& r) {
  if (!all_finite({r.f_coeff[0], r.f_coeff[1], r.g_coeff[0], r.g_coeff[1]}))
    throw ValidationError("linear response coefficients must be finite");
}

SupBound response_sup(const AtomResponse& r) {
  return std::visit(
      Overloaded{
          [](const DirectionLinear& d) -> SupBound { return std::sqrt(d.w[0] * d.w[0] + d.w[1] * d.w[1] + d.w[2] * d.w[2]); },
          [](const DirectionSign&) -> SupBound { return 1.0; },
          // sup over alpha of |f cos(alpha) - g sin(alpha)|.
          [](const AngleTrig& t) -> SupBound { return std::hypot(t.f, t.g); },
          [](const TimeLinear& t) -> SupBound {
            if (t.g != 0.0) return Unbounded{};
            return std::abs(t.f);
          },
          [](const Tabulated& t) -> SupBound {
            double m = 0.0;
            for (const auto& [s, v] : t.entries) m = std::max(m, std::abs(v));
            return m;
          },
      },
      r);
}

SupBound max_bound(const SupBound& a, const SupBound& b) {
  if (std::holds_alternative<Unbounded>(a) || std::holds_alternative<Unbounded>(b)) return Unbounded{};
  return std::max(std::get<double>(a), std::get<double>(b));
}

// Roughly uniform directions on the sphere.
std::vector<op::UnitVector3> fibonacci_sphere(int n) {
  std::vector<op::UnitVector3> pts;
  pts.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / n;
    const double rho = std::sqrt(1.0 - z * z);
    pts.push_back(op::UnitVector3::normalized(rho * std::cos(golden * k), rho * std::sin(golden * k), z));
  }
  return pts;
}

double response_grid_sup(const AtomResponse& r, int n) {
  double m = 0.0;
  auto track = [&](const Setting& s) { m = std::max(m, std::abs(evaluate(r, s))); };
  std::visit(Overloaded{
                 [&](const DirectionLinear&) {
                   for (const auto& a : fibonacci_sphere(n)) track(a);
                 },
                 [&](const DirectionSign&) {
                   for (const auto& a : fibonacci_sphere(n)) track(a);
                 },
                 [&](const AngleTrig&) {
                   for (int k = 0; k < n; ++k) track(QuadratureSetting(kTwoPi * k / n));
                 },
                 [&](const TimeLinear&) {
                   for (int k = 0; k < n; ++k) track(TimeSetting(-10.0 + 20.0 * k / (n - 1)));
                 },
                 [&](const Tabulated& t) {
                   for (const auto& [s, v] : t.entries) m = std::max(m, std::abs(v));
                 },
             },
             r);
  return m;
}

std::array<double, 2> general_party1_f(const gaussian::MomentMatrix& m) { return {m.A, m.C}; }
std::array<double, 2> general_party1_g(const gaussian::MomentMatrix& m) { return {m.B, m.D}; }

// Coefficient vector F cos(alpha) - G sin(alpha) (or F + G t) vanishes for
// some setting.
bool has_null_setting(const LinearResponse& r) {
  const double det = r.f_coeff[0] * r.g_coeff[1] - r.f_coeff[1] * r.g_coeff[0];
  const double scale = std::max({std::abs(r.f_coeff[0]), std::abs(r.f_coeff[1]), std::abs(r.g_coeff[0]),
                                 std::abs(r.g_coeff[1])});
  if (scale == 0.0) return true;
  const bool independent = std::abs(det) > 1e-12 * scale * scale;
  if (independent) return false;
  if (r.mode == ResponseMode::kLinearTime && is_zero(r.g_coeff)) return false;
  return true;
}

}  // namespace

double evaluate(const AtomResponse& r, const Setting& s) {
  return std::visit(
      Overloaded{
          [&](const DirectionLinear& d) { return dot3(d.w, setting_as<op::UnitVector3>(s)); },
          [&](const DirectionSign& d) { return dot3(d.w, setting_as<op::UnitVector3>(s)) >= 0.0 ? 1.0 : -1.0; },
          [&](const AngleTrig& t) {
            const double a = setting_as<QuadratureSetting>(s).alpha();
            return t.f * std::cos(a) - t.g * std::sin(a);
          },
          [&](const TimeLinear& t) { return t.f + t.g * setting_as<TimeSetting>(s).t(); },
          [&](const Tabulated& t) {
            for (const auto& [key, v] : t.entries)
              if (key == s) return v;
            throw ValidationError("tabulated response has no entry for this setting");
          },
      },
      r);
}

std::array<double, 2> LinearResponse::eta_coefficients(const Setting& s) const {
  if (mode == ResponseMode::kTrig) {
    const double a = setting_as<QuadratureSetting>(s).alpha();
    const double c = std::cos(a), sn = std::sin(a);
    return {f_coeff[0] * c - g_coeff[0] * sn, f_coeff[1] * c - g_coeff[1] * sn};
  }
  const double t = setting_as<TimeSetting>(s).t();
  return {f_coeff[0] + g_coeff[0] * t, f_coeff[1] + g_coeff[1] * t};
}

std::string to_string(const SupBound& b) {
  if (std::holds_alternative<Unbounded>(b)) return "unbounded";
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(b);
  return os.str();
}

HiddenVariableModel HiddenVariableModel::finite(std::vector<Atom> atoms, std::optional<SupBound> certified) {
  if (atoms.empty()) throw ValidationError("finite sample space needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.weight) || a.weight < 0.0) throw ValidationError("atom weights must be nonnegative");
    total += a.weight;
    validate_response(a.xi1);
    validate_response(a.xi2);
  }
  if (std::abs(total - 1.0) > kWeightTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "atom weights sum to " << total << ", expected 1";
    throw ValidationError(msg.str());
  }
  HiddenVariableModel m;
  m.kind_ = SampleSpaceKind::kFinite;
  m.atoms_ = std::move(atoms);
  if (certified) {
    if (const double* c = std::get_if<double>(&*certified)) {
      if (!(*c >= 0.0)) throw ValidationError("certified sup bound must be nonnegative");
      const SupBound actual = sup_bound(m);
      if (std::holds_alternative<Unbounded>(actual) || std::get<double>(actual) > *c + kSupTol)
        throw ValidationError("responses exceed certified sup bound " + to_string(*certified) + " (actual " +
                              to_string(actual) + ")");
    }
  }
  m.certified_ = std::move(certified);
  return m;
}

HiddenVariableModel HiddenVariableModel::gaussian_pair(LinearResponse xi1, LinearResponse xi2,
                                                       std::optional<SupBound> certified) {
  validate_linear(xi1);
  validate_linear(xi2);
  HiddenVariableModel m;
  m.kind_ = SampleSpaceKind::kGaussianPair;
  m.linear_.emplace(xi1, xi2);
  if (certified) {
    if (const double* c = std::get_if<double>(&*certified)) {
      const SupBound actual = sup_bound(m);
      if (!(*c >= 0.0) || std::holds_alternative<Unbounded>(actual) || std::get<double>(actual) > *c + kSupTol)
        throw ValidationError("Gaussian responses exceed certified sup bound " + to_string(*certified));
    }
  }
  m.certified_ = std::move(certified);
  return m;
}

SampleSpace HiddenVariableModel::space() const {
  SampleSpace s{kind_, {}};
  for (const auto& a : atoms_) s.weights.push_back(a.weight);
  return s;
}

const std::vector<Atom>& HiddenVariableModel::atoms() const {
  if (kind_ != SampleSpaceKind::kFinite) throw ValidationError("model has no finite atoms");
  return atoms_;
}

const LinearResponse& HiddenVariableModel::linear_xi1() const {
  if (!linear_) throw ValidationError("model has no Gaussian-pair responses");
  return linear_->first;
}

const LinearResponse& HiddenVariableModel::linear_xi2() const {
  if (!linear_) throw ValidationError("model has no Gaussian-pair responses");
  return linear_->second;
}

HiddenVariableModel unbounded_spin_model() {
  const double s3 = std::sqrt(3.0);
  std::vector<Atom> atoms;
  for (int k = 0; k < 3; ++k) {
    std::array<double, 3> w{0.0, 0.0, 0.0};
    w[k] = s3;
    std::array<double, 3> minus_w{0.0, 0.0, 0.0};
    minus_w[k] = -s3;
    atoms.push_back({1.0 / 3.0, DirectionLinear{w}, DirectionLinear{minus_w}});
  }
  // 3 * (1/3) rounds to exactly 1.
  return HiddenVariableModel::finite(std::move(atoms), SupBound{s3});
}

HiddenVariableModel quadrature_model(const gaussian::MomentMatrix& m, QuadratureVariant variant) {
  LinearResponse r1{}, r2{};
  r1.mode = r2.mode = ResponseMode::kTrig;
  if (variant == QuadratureVariant::kPaperExplicit) {
    if (std::abs(m.A) <= kDegenerateA) {
      std::ostringstream msg;
      msg << "|<q1 q2>| = " << std::abs(m.A) << " <= " << kDegenerateA
          << "; the closed-form solution divides by it, use the general factorization";
      throw DegenerateMoment(msg.str());
    }
    // f1 = A eta1, g1 = B eta1 + (D - BC/A) eta2, f2 = eta1, g2 = (C/A) eta1 + eta2.
    r1.f_coeff = {m.A, 0.0};
    r1.g_coeff = {m.B, m.D - m.B * m.C / m.A};
    r2.f_coeff = {1.0, 0.0};
    r2.g_coeff = {m.C / m.A, 1.0};
  } else {
    r1.f_coeff = general_party1_f(m);
    r1.g_coeff = general_party1_g(m);
    r2.f_coeff = {1.0, 0.0};
    r2.g_coeff = {0.0, 1.0};
  }
  // Party 2 always has unit coefficients, so the model is never bounded.
  return HiddenVariableModel::gaussian_pair(r1, r2, SupBound{Unbounded{}});
}

HiddenVariableModel free_evolution_model(const gaussian::MomentMatrix& m) {
  LinearResponse r1{general_party1_f(m), general_party1_g(m), ResponseMode::kLinearTime};
  LinearResponse r2{{1.0, 0.0}, {0.0, 1.0}, ResponseMode::kLinearTime};
  return HiddenVariableModel::gaussian_pair(r1, r2, SupBound{Unbounded{}});
}

double exact_expectation(const HiddenVariableModel& model, const Setting& s1, const Setting& s2) {
  if (model.kind() == SampleSpaceKind::kFinite) {
    double sum = 0.0;
    for (const auto& a : model.atoms()) sum += a.weight * evaluate(a.xi1, s1) * evaluate(a.xi2, s2);
    return sum;
  }
  // E[eta_mu eta_nu] = delta_mu_nu.
  const auto u = model.linear_xi1().eta_coefficients(s1);
  const auto v = model.linear_xi2().eta_coefficients(s2);
  return u[0] * v[0] + u[1] * v[1];
}

SupBound sup_bound(const HiddenVariableModel& model) {
  if (model.kind() == SampleSpaceKind::kGaussianPair) {
    for (const auto* r : {&model.linear_xi1(), &model.linear_xi2()})
      if (!is_zero(r->f_coeff) || !is_zero(r->g_coeff)) return Unbounded{};
    return 0.0;
  }
  SupBound best = 0.0;
  for (const auto& a : model.atoms()) {
    best = max_bound(best, response_sup(a.xi1));
    best = max_bound(best, response_sup(a.xi2));
  }
  return best;
}

double grid_sup_bound(const HiddenVariableModel& model, int grid_size) {
  if (grid_size < 2) throw ValidationError("grid needs at least 2 points");
  double best = 0.0;
  for (const auto& a : model.atoms()) {
    best = std::max(best, response_grid_sup(a.xi1, grid_size));
    best = std::max(best, response_grid_sup(a.xi2, grid_size));
  }
  return best;
}

SpectrumReport spectrum_compatibility(const HiddenVariableModel& model, Spectrum spectrum) {
  const SupBound sup = sup_bound(model);
  if (spectrum == Spectrum::kSpinPm1) {
    if (std::holds_alternative<Unbounded>(sup))
      return {false, sup, "responses are unbounded; spin spectrum is {-1, +1}"};
    const double s = std::get<double>(sup);
    if (s > 1.0 + kSupTol) return {false, sup, "sup |xi| = " + to_string(sup) + " exceeds 1"};
    return {true, sup, "sup |xi| = " + to_string(sup) + " within [-1, 1]"};
  }
  if (model.kind() == SampleSpaceKind::kFinite)
    return {false, sup, "finite sample space cannot reach the whole real line"};
  if (has_null_setting(model.linear_xi1()))
    return {false, sup, "party-1 response collapses to a constant at some setting"};
  if (has_null_setting(model.linear_xi2()))
    return {false, sup, "party-2 response collapses to a constant at some setting"};
  return {true, sup, "Gaussian linear responses span the real line at every setting"};
}

// --- JSON ---

nlohmann::json setting_to_json(const Setting& s) {
  return std::visit(Overloaded{
                        [](const op::UnitVector3& a) {
                          return nlohmann::json{{"direction", {a[0], a[1], a[2]}}};
                        },
                        [](const QuadratureSetting& q) { return nlohmann::json{{"angle", q.alpha()}}; },
                        [](const TimeSetting& t) { return nlohmann::json{{"time", t.t()}}; },
                    },
                    s);
}

Setting setting_from_json(const nlohmann::json& j) {
  if (j.contains("direction")) {
    const auto& d = j.at("direction");
    if (!d.is_array() || d.size() != 3) throw ValidationError("direction must have 3 components");
    return op::UnitVector3(d[0].get<double>(), d[1].get<double>(), d[2].get<double>());
  }
  if (j.contains("angle")) return QuadratureSetting(j.at("angle").get<double>());
  if (j.contains("time")) return TimeSetting(j.at("time").get<double>());
  throw ValidationError("setting JSON needs one of direction, angle, time");
}

namespace {

nlohmann::json response_to_json(const AtomResponse& r) {
  return std::visit(
      Overloaded{
          [](const DirectionLinear& d) { return nlohmann::json{{"kind", "direction_linear"}, {"w", d.w}}; },
          [](const DirectionSign& d) { return nlohmann::json{{"kind", "direction_sign"}, {"w", d.w}}; },
          [](const AngleTrig& t) { return nlohmann::json{{"kind", "angle_trig"}, {"f", t.f}, {"g", t.g}}; },
          [](const TimeLinear& t) { return nlohmann::json{{"kind", "time_linear"}, {"f", t.f}, {"g", t.g}}; },
          [](const Tabulated& t) {
            nlohmann::json entries = nlohmann::json::array();
            for (const auto& [s, v] : t.entries) entries.push_back({{"setting", setting_to_json(s)}, {"value", v}});
            return nlohmann::json{{"kind", "table"}, {"entries", std::move(entries)}};
          },
      },
      r);
}

AtomResponse response_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "direction_linear") return DirectionLinear{j.at("w").get<std::array<double, 3>>()};
  if (kind == "direction_sign") return DirectionSign{j.at("w").get<std::array<double, 3>>()};
  if (kind == "angle_trig") return AngleTrig{j.at("f").get<double>(), j.at("g").get<double>()};
  if (kind == "time_linear") return TimeLinear{j.at("f").get<double>(), j.at("g").get<double>()};
  if (kind == "table") {
    Tabulated t;
    for (const auto& e : j.at("entries")) t.entries.emplace_back(setting_from_json(e.at("setting")), e.at("value").get<double>());
    return t;
  }
  throw ValidationError("unknown response kind \"" + kind + "\"");
}

nlohmann::json sup_to_json(const std::optional<SupBound>& b) {
  if (!b) return nullptr;
  if (std::holds_alternative<Unbounded>(*b)) return "unbounded";
  return std::get<double>(*b);
}

nlohmann::json linear_to_json(const LinearResponse& r) {
  return {{"mode", r.mode == ResponseMode::kTrig ? "trig" : "linear_time"},
          {"f", r.f_coeff},
          {"g", r.g_coeff}};
}

}  // namespace

nlohmann::json to_json(const HiddenVariableModel& model) {
  if (model.kind() == SampleSpaceKind::kGaussianPair) {
    return {{"space", "gaussian_pair"},
            {"xi1", linear_to_json(model.linear_xi1())},
            {"xi2", linear_to_json(model.linear_xi2())},
            {"supBound", sup_to_json(model.certified_sup_bound())}};
  }
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : model.atoms())
    atoms.push_back({{"weight", a.weight}, {"xi1", response_to_json(a.xi1)}, {"xi2", response_to_json(a.xi2)}});
  return {{"atoms", std::move(atoms)}, {"supBound", sup_to_json(model.certified_sup_bound())}};
}

HiddenVariableModel finite_model_from_json(const nlohmann::json& j) {
  try {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms"))
      atoms.push_back({a.at("weight").get<double>(), response_from_json(a.at("xi1")), response_from_json(a.at("xi2"))});
    std::optional<SupBound> certified;
    if (j.contains("supBound") && !j.at("supBound").is_null()) {
      const auto& b = j.at("supBound");
      if (b.is_string()) {
        if (b.get<std::string>() != "unbounded") throw ValidationError("supBound must be a number or \"unbounded\"");
        certified = Unbounded{};
      } else {
        certified = b.get<double>();
      }
    }
    return HiddenVariableModel::finite(std::move(atoms), certified);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace eprlab::lhv
