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

#include "eprlab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <regex>
#include <sstream>

#include "eprlab/correlators.hpp"
#include "eprlab/estimator.hpp"

namespace eprlab::cli {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::uint64_t parse_count(const json& j, const std::string& what) {
  if (!j.is_number_unsigned()) throw ValidationError(what + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

ScenarioKind parse_kind(const json& j) {
  if (!j.is_string()) throw ValidationError("\"kind\" must be a string");
  const auto k = j.get<std::string>();
  if (k == "SPIN_CHSH") return ScenarioKind::kSpinChsh;
  if (k == "EPR_QUADRATURE") return ScenarioKind::kEprQuadrature;
  if (k == "FREE_EVOLUTION") return ScenarioKind::kFreeEvolution;
  throw ValidationError("unknown scenario kind \"" + k + "\"");
}

gaussian::MomentMatrix parse_state(const json& j) {
  if (!j.is_object()) throw ValidationError("\"state\" must be an object");
  if (j.contains("squeezing")) return gaussian::extract_moments(gaussian::tmsv(parse_real(j.at("squeezing"))));
  if (j.contains("moments")) return gaussian::moment_matrix_from_json(j.at("moments"));
  if (j.contains("gaussian")) {
    const auto state = gaussian::gaussian_state_from_json(j.at("gaussian"));
    const auto report = gaussian::uncertainty_check(state);
    if (!report.physical) {
      std::ostringstream msg;
      msg << "Gaussian state violates the uncertainty relation (min eigenvalue " << report.min_eigenvalue << ")";
      throw ValidationError(msg.str());
    }
    return gaussian::extract_moments(state);
  }
  throw ValidationError("\"state\" needs one of squeezing, moments, gaussian");
}

ScanAxis parse_axis(const json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  if (j.contains("values")) {
    const auto& v = j.at("values");
    if (!v.is_array() || v.empty()) throw ValidationError(where + ".values must be a nonempty array");
    ScanAxis axis;
    for (const auto& x : v) axis.values.push_back(parse_real(x));
    return axis;
  }
  return linear_axis(parse_real(require(j, "start", where)), parse_real(require(j, "stop", where)),
                     parse_count(require(j, "count", where), where + ".count"));
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Setting make_setting(ScenarioKind kind, double x) {
  switch (kind) {
    case ScenarioKind::kSpinChsh: return op::UnitVector3::in_xz_plane(x);
    case ScenarioKind::kEprQuadrature: return QuadratureSetting(x);
    case ScenarioKind::kFreeEvolution: return TimeSetting(x);
  }
  throw ValidationError("unknown scenario kind");
}

json sup_json(const lhv::SupBound& b) {
  if (std::holds_alternative<lhv::Unbounded>(b)) return "unbounded";
  return std::get<double>(b);
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kSpinChsh: return "SPIN_CHSH";
    case ScenarioKind::kEprQuadrature: return "EPR_QUADRATURE";
    case ScenarioKind::kFreeEvolution: return "FREE_EVOLUTION";
  }
  return "UNKNOWN";
}

double parse_real(const json& j) {
  if (j.is_number()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ValidationError("value must be finite");
    return x;
  }
  if (!j.is_string()) throw ValidationError("expected a number or a pi expression");
  const auto s = j.get<std::string>();
  static const std::regex pi_expr(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, pi_expr)) {
    const std::string coeff = m[1].str();
    double c = 1.0;
    if (coeff == "-") c = -1.0;
    else if (!coeff.empty() && coeff != "+") c = std::stod(coeff);
    const double d = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (d == 0.0) throw ValidationError("division by zero in \"" + s + "\"");
    return c * std::numbers::pi / d;
  }
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size() && std::isfinite(x)) return x;
  } catch (const std::exception&) {
  }
  throw ValidationError("cannot parse \"" + s + "\" as a real number");
}

ScanAxis linear_axis(double start, double stop, std::uint64_t count) {
  if (count < 2) throw ValidationError("scan range needs count >= 2");
  if (start == stop) throw ValidationError("scan range needs start != stop");
  ScanAxis axis;
  axis.values.reserve(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::uint64_t i = 0; i + 1 < count; ++i) axis.values.push_back(start + step * static_cast<double>(i));
  axis.values.push_back(stop);
  return axis;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw ValidationError("scenario must be a JSON object");
  Scenario sc;
  sc.kind = parse_kind(require(j, "kind", "scenario"));
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw ValidationError("\"name\" must be a string");
    sc.name = j.at("name").get<std::string>();
  } else {
    sc.name = "scenario";
  }
  if (sc.name.empty() || sc.name.find_first_of("/\\") != std::string::npos)
    throw ValidationError("\"name\" must be a nonempty file stem");

  if (sc.kind == ScenarioKind::kSpinChsh) {
    if (j.contains("state")) throw ValidationError("SPIN_CHSH scenarios always use the singlet; drop \"state\"");
  } else {
    sc.moments = parse_state(require(j, "state", "scenario"));
  }

  if (j.contains("variant")) {
    const auto v = j.at("variant").get<std::string>();
    if (v == "general") sc.variant = lhv::QuadratureVariant::kGeneralFactorization;
    else if (v == "paper_explicit") sc.variant = lhv::QuadratureVariant::kPaperExplicit;
    else throw ValidationError("\"variant\" must be \"general\" or \"paper_explicit\"");
    if (sc.kind != ScenarioKind::kEprQuadrature) throw ValidationError("\"variant\" applies to EPR_QUADRATURE only");
  }

  const auto& settings = require(j, "settings", "scenario");
  if (settings.contains("pairs")) {
    const auto& p = settings.at("pairs");
    if (!p.is_array() || p.empty()) throw ValidationError("settings.pairs must be a nonempty array");
    for (const auto& pair : p) {
      if (!pair.is_array() || pair.size() != 2) throw ValidationError("each settings pair needs 2 entries");
      sc.pairs.emplace_back(parse_real(pair[0]), parse_real(pair[1]));
    }
  } else if (settings.contains("scan")) {
    const auto& scan = settings.at("scan");
    const auto a1 = parse_axis(require(scan, "setting1", "settings.scan"), "settings.scan.setting1");
    const auto a2 = parse_axis(require(scan, "setting2", "settings.scan"), "settings.scan.setting2");
    for (double x1 : a1.values)
      for (double x2 : a2.values) sc.pairs.emplace_back(x1, x2);
  } else {
    throw ValidationError("settings needs \"pairs\" or \"scan\"");
  }

  if (j.contains("chsh")) {
    const auto& c = j.at("chsh");
    if (!c.is_array() || c.size() != 4) throw ValidationError("\"chsh\" must list a, a', b, b'");
    sc.chsh = std::array<double, 4>{parse_real(c[0]), parse_real(c[1]), parse_real(c[2]), parse_real(c[3])};
  } else if (sc.kind == ScenarioKind::kSpinChsh) {
    using std::numbers::pi;
    sc.chsh = std::array<double, 4>{0.0, pi / 2, pi / 4, 3 * pi / 4};
  }

  if (j.contains("samples")) sc.samples = parse_count(j.at("samples"), "\"samples\"");
  if (j.contains("seed")) sc.seed = parse_count(j.at("seed"), "\"seed\"");
  if (sc.samples < 2) throw ValidationError("\"samples\" must be at least 2");

  sc.csv_name = sc.name + ".csv";
  sc.summary_name = sc.name + ".summary.json";
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    if (o.contains("csv")) sc.csv_name = o.at("csv").get<std::string>();
    if (o.contains("summary")) sc.summary_name = o.at("summary").get<std::string>();
  }

  // Surface bad settings (e.g. non-finite) and degenerate variants at parse time.
  for (const auto& [x1, x2] : sc.pairs) {
    make_setting(sc.kind, x1);
    make_setting(sc.kind, x2);
  }
  if (sc.kind == ScenarioKind::kEprQuadrature) lhv::quadrature_model(sc.moments, sc.variant);
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path.string() + ": " + e.what());
  }
  try {
    return parse_scenario(j);
  } catch (const json::exception& e) {
    throw ValidationError("malformed scenario " + path.string() + ": " + e.what());
  }
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t index) { return seed + static_cast<std::uint64_t>(index); }

RunResult execute(const Scenario& sc, const RunOptions& options) {
  const std::uint64_t seed = options.seed.value_or(sc.seed);
  const std::uint64_t samples = options.samples.value_or(sc.samples);
  if (samples < 2) throw ValidationError("samples must be at least 2");

  corr::CorrelationFunction quantum;
  std::optional<lhv::HiddenVariableModel> model;
  lhv::Spectrum spectrum = lhv::Spectrum::kQuadratureRealLine;
  switch (sc.kind) {
    case ScenarioKind::kSpinChsh:
      quantum = corr::spin_correlator();
      model = lhv::unbounded_spin_model();
      spectrum = lhv::Spectrum::kSpinPm1;
      break;
    case ScenarioKind::kEprQuadrature:
      quantum = corr::quadrature_correlator(sc.moments);
      model = lhv::quadrature_model(sc.moments, sc.variant);
      break;
    case ScenarioKind::kFreeEvolution:
      quantum = corr::free_evolution_correlator(sc.moments);
      model = lhv::free_evolution_model(sc.moments);
      break;
  }
  const auto classical = [&m = *model](const Setting& s1, const Setting& s2) {
    return lhv::exact_expectation(m, s1, s2);
  };

  RunResult result;
  double max_abs_z = 0.0;
  double max_dev = 0.0;
  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    const auto [x1, x2] = sc.pairs[i];
    const Setting s1 = make_setting(sc.kind, x1);
    const Setting s2 = make_setting(sc.kind, x2);
    const double q = quantum(s1, s2);
    const double exact = classical(s1, s2);
    const auto est = est::mc_estimate(*model, s1, s2, samples, row_seed(seed, i), {options.workers});
    const auto cmp = est::compare(exact, est);
    result.rows.push_back({x1, x2, q, exact, est.mean, est.std_error, cmp.z_score});
    max_abs_z = std::max(max_abs_z, std::abs(cmp.z_score));
    max_dev = std::max(max_dev, std::abs(exact - q));
    if (!(std::abs(exact - q) <= kConsistencyTol)) result.consistency_pass = false;
  }

  json chsh_q = nullptr, chsh_l = nullptr;
  if (sc.chsh) {
    const auto& c = *sc.chsh;
    const corr::ChshSettings settings(make_setting(sc.kind, c[0]), make_setting(sc.kind, c[1]),
                                      make_setting(sc.kind, c[2]), make_setting(sc.kind, c[3]));
    const double sq = corr::chsh_value(quantum, settings);
    const double sl = corr::chsh_value(classical, settings);
    chsh_q = sq;
    chsh_l = sl;
    if (!(std::abs(sq - sl) <= 4 * kConsistencyTol)) result.consistency_pass = false;
  }

  const auto report = lhv::spectrum_compatibility(*model, spectrum);
  result.summary = {
      {"name", sc.name},
      {"kind", to_string(sc.kind)},
      {"rows", result.rows.size()},
      {"samples", samples},
      {"seed", seed},
      {"chsh_quantum", chsh_q},
      {"chsh_lhv_exact", chsh_l},
      {"sup_bound", sup_json(lhv::sup_bound(*model))},
      {"spectrum_check",
       {{"spectrum", spectrum == lhv::Spectrum::kSpinPm1 ? "SPIN_PM1" : "QUADRATURE_REAL_LINE"},
        {"pass", report.pass},
        {"detail", report.detail}}},
      {"max_abs_dev", max_dev},
      {"max_abs_z", std::isfinite(max_abs_z) ? json(max_abs_z) : json("inf")},
      {"consistency_pass", result.consistency_pass},
  };
  if (sc.kind != ScenarioKind::kSpinChsh) result.summary["moments"] = sc.moments;
  return result;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = "setting1,setting2,quantum,lhv_exact,lhv_mc,stderr,z\n";
  for (const auto& r : rows) {
    out += fmt17(r.setting1) + ',' + fmt17(r.setting2) + ',' + fmt17(r.quantum) + ',' + fmt17(r.lhv_exact) + ',' +
           fmt17(r.lhv_mc) + ',' + fmt17(r.std_error) + ',' + fmt17(r.z_score) + '\n';
  }
  return out;
}

void print_table(std::ostream& out, const Scenario& sc, const RunResult& result) {
  constexpr std::size_t kMaxRows = 40;
  char line[160];
  out << sc.name << " (" << to_string(sc.kind) << ")\n";
  std::snprintf(line, sizeof line, "%12s %12s %14s %14s %14s %11s %8s\n", "setting1", "setting2", "quantum", "lhv_exact",
                "lhv_mc", "stderr", "z");
  out << line;
  for (std::size_t i = 0; i < result.rows.size() && i < kMaxRows; ++i) {
    const auto& r = result.rows[i];
    std::snprintf(line, sizeof line, "%12.6f %12.6f %14.8f %14.8f %14.8f %11.3e %8.3f\n", r.setting1, r.setting2,
                  r.quantum, r.lhv_exact, r.lhv_mc, r.std_error, r.z_score);
    out << line;
  }
  if (result.rows.size() > kMaxRows) out << "... " << result.rows.size() - kMaxRows << " more rows\n";
  const auto& s = result.summary;
  if (!s["chsh_quantum"].is_null())
    out << "CHSH quantum " << s["chsh_quantum"].get<double>() << ", LHV exact " << s["chsh_lhv_exact"].get<double>()
        << "\n";
  out << "sup bound " << s["sup_bound"].dump() << "; spectrum " << s["spectrum_check"]["spectrum"].get<std::string>()
      << (s["spectrum_check"]["pass"].get<bool>() ? " PASS" : " FAIL") << " ("
      << s["spectrum_check"]["detail"].get<std::string>() << ")\n";
  out << "max |z| " << s["max_abs_z"].dump() << "; consistency " << (result.consistency_pass ? "PASS" : "FAIL")
      << "\n";
}

int run_scenario(const std::filesystem::path& path, const std::filesystem::path& out_dir, const RunOptions& options,
                 std::ostream& out, std::ostream& err) {
  Scenario sc;
  RunResult result;
  try {
    sc = load_scenario(path);
    result = execute(sc, options);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return 2;
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const auto csv_path = out_dir / sc.csv_name;
  const auto summary_path = out_dir / sc.summary_name;
  {
    std::ofstream csv(csv_path, std::ios::binary);
    std::ofstream summary(summary_path, std::ios::binary);
    if (!csv || !summary) {
      err << "error: cannot write results into " << out_dir.string() << "\n";
      return 1;
    }
    csv << format_csv(result.rows);
    summary << result.summary.dump(2) << "\n";
  }
  print_table(out, sc, result);
  out << "wrote " << csv_path.string() << " and " << summary_path.string() << "\n";
  if (!result.consistency_pass) {
    err << "consistency failure: hidden-variable correlation differs from the quantum value by more than "
        << kConsistencyTol << "\n";
    return 2;
  }
  return 0;
}

}  // namespace eprlab::cli
