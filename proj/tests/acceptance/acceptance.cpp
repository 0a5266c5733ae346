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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eprlab/correlators.hpp"
#include "eprlab/estimator.hpp"
#include "eprlab/gaussian_states.hpp"
#include "eprlab/lhv.hpp"
#include "eprlab/operator_core.hpp"
#include "eprlab/scenario.hpp"

namespace {

using namespace eprlab;
using gaussian::MomentMatrix;

struct Outcome {
  bool pass;
  std::string detail;
};

op::UnitVector3 random_unit(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  return op::UnitVector3::normalized(n(gen), n(gen), n(gen));
}

MomentMatrix random_moments(std::mt19937_64& gen, bool zero_a) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  MomentMatrix m(u(gen), u(gen), u(gen), u(gen));
  if (zero_a) m.A = 0.0;
  return m;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// 1. Singlet correlator, matrix path vs -a.b.
Outcome singlet_correlator() {
  std::mt19937_64 gen(1);
  const auto psi = op::singlet_state();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = random_unit(gen), b = random_unit(gen);
    const double matrix = op::expectation(psi, op::tensor(op::pauli_observable(a), op::pauli_observable(b)));
    worst = std::max(worst, std::abs(matrix + a.dot(b)));
    worst = std::max(worst, std::abs(corr::spin_correlation(a, b) + a.dot(b)));
  }
  return {worst <= 1e-10, "max |matrix + a.b| = " + fmt("%.3e", worst)};
}

// 2. Unbounded three-atom model.
Outcome bell_counterexample() {
  const auto model = lhv::unbounded_spin_model();
  std::mt19937_64 gen(2);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = random_unit(gen), b = random_unit(gen);
    worst = std::max(worst, std::abs(lhv::exact_expectation(model, a, b) + a.dot(b)));
  }
  const double sup = std::get<double>(lhv::sup_bound(model));
  const op::UnitVector3 z(0, 0, 1);
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto e = est::mc_estimate(model, z, z, 1'000'000, seed);
    if (std::abs(e.mean + 1.0) <= 5.0 * e.std_error) ++within;
  }
  const bool pass = worst <= 1e-12 && std::abs(sup - std::sqrt(3.0)) <= 1e-12 && within >= 19;
  return {pass, "exact dev " + fmt("%.3e", worst) + ", sup " + fmt("%.16g", sup) + ", MC within 5se " +
                    std::to_string(within) + "/20"};
}

// 3. CHSH: quantum vs unbounded LHV vs bounded LHV.
Outcome chsh_contrast() {
  const auto settings = corr::standard_spin_chsh();
  const double sq = corr::chsh_value(corr::spin_correlator(), settings);
  const auto model = lhv::unbounded_spin_model();
  const double sl = corr::chsh_value(
      [&](const Setting& s1, const Setting& s2) { return lhv::exact_expectation(model, s1, s2); }, settings);
  const bool spectrum_fails = !lhv::spectrum_compatibility(model, lhv::Spectrum::kSpinPm1).pass;

  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> atoms_dist(1, 8), kind_dist(0, 2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), pos(0.0, 1.0);
  double worst_bounded = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const corr::ChshSettings s(random_unit(gen), random_unit(gen), random_unit(gen), random_unit(gen));
    const int k = atoms_dist(gen);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = pos(gen) + 1e-3);
    auto response = [&](const Setting& x, const Setting& y) -> lhv::AtomResponse {
      switch (kind_dist(gen)) {
        case 0: return lhv::DirectionSign{{unit(gen), unit(gen), unit(gen)}};
        case 1: {
          const auto d = random_unit(gen);
          const double r = pos(gen);
          return lhv::DirectionLinear{{r * d[0], r * d[1], r * d[2]}};
        }
        default: return lhv::Tabulated{{{x, unit(gen)}, {y, unit(gen)}}};
      }
    };
    std::vector<lhv::Atom> atoms;
    for (int i = 0; i < k; ++i)
      atoms.push_back({w[i] / total, response(s.a(), s.a_prime()), response(s.b(), s.b_prime())});
    const auto bounded = lhv::HiddenVariableModel::finite(std::move(atoms), lhv::SupBound{1.0});
    const double v = corr::chsh_value(
        [&](const Setting& s1, const Setting& s2) { return lhv::exact_expectation(bounded, s1, s2); }, s);
    worst_bounded = std::max(worst_bounded, std::abs(v));
  }
  const double tsirelson = 2.0 * std::sqrt(2.0);
  const bool pass = std::abs(std::abs(sq) - tsirelson) <= 1e-9 && std::abs(std::abs(sl) - tsirelson) <= 1e-9 &&
                    spectrum_fails && worst_bounded <= 2.0 + 1e-12;
  return {pass, "S_quantum " + fmt("%.12f", sq) + ", S_lhv " + fmt("%.12f", sl) + ", SPIN_PM1 " +
                    (spectrum_fails ? "rejected" : "accepted") + ", max bounded |S| " + fmt("%.6f", worst_bounded)};
}

// 4. Representation of the rotated-quadrature correlator.
Outcome representation_theorem() {
  std::mt19937_64 gen(4);
  double worst_general = 0.0, worst_paper = 0.0;
  int zero_a = 0, paper_checked = 0;
  std::vector<QuadratureSetting> grid;
  for (int i = 0; i < 72; ++i) grid.emplace_back(kTwoPi * i / 72);
  for (int trial = 0; trial < 1000; ++trial) {
    const bool degenerate = trial % 10 == 0;
    zero_a += degenerate;
    const auto m = random_moments(gen, degenerate);
    const auto general = lhv::quadrature_model(m, lhv::QuadratureVariant::kGeneralFactorization);
    std::optional<lhv::HiddenVariableModel> paper;
    if (std::abs(m.A) > lhv::kDegenerateA) {
      paper = lhv::quadrature_model(m, lhv::QuadratureVariant::kPaperExplicit);
      ++paper_checked;
    }
    for (const auto& s1 : grid)
      for (const auto& s2 : grid) {
        const double q = corr::quadrature_correlation(m, s1, s2);
        const double g = lhv::exact_expectation(general, s1, s2);
        worst_general = std::max(worst_general, std::abs(g - q));
        if (paper) worst_paper = std::max(worst_paper, std::abs(lhv::exact_expectation(*paper, s1, s2) - g));
      }
  }
  const bool pass = worst_general <= 1e-10 && worst_paper <= 1e-10;
  return {pass, "max |lhv - quantum| " + fmt("%.3e", worst_general) + " (" + std::to_string(zero_a) +
                    " draws with A=0), max |explicit - general| " + fmt("%.3e", worst_paper) + " over " +
                    std::to_string(paper_checked) + " draws"};
}

// 5. Two-mode squeezed vacuum against symplectic conjugation of the vacuum.
Outcome tmsv_scenario() {
  const double r = 1.0, c = std::cosh(r), s = std::sinh(r);
  gaussian::Matrix4 S;
  S << c, 0, s, 0, 0, c, 0, -s, s, 0, c, 0, 0, -s, 0, c;
  const gaussian::Matrix4 oracle = S * (0.5 * gaussian::Matrix4::Identity()) * S.transpose();
  const auto m = gaussian::extract_moments(gaussian::tmsv(r));
  const double dev = std::max({std::abs(m.A - oracle(0, 2)), std::abs(m.B - oracle(1, 2)),
                               std::abs(m.C - oracle(0, 3)), std::abs(m.D - oracle(1, 3)),
                               std::abs(m.A - std::sinh(2.0) / 2.0), std::abs(m.D + std::sinh(2.0) / 2.0)});
  double worst = 0.0;
  for (int i = 0; i < 72; ++i)
    for (int j = 0; j < 72; ++j) {
      const double a1 = kTwoPi * i / 72, a2 = kTwoPi * j / 72;
      const double q = corr::quadrature_correlation(m, QuadratureSetting(a1), QuadratureSetting(a2));
      worst = std::max(worst, std::abs(q - m.A * std::cos(a1 + a2)));
    }
  return {dev <= 1e-12 && worst <= 1e-12 && m.B == 0.0 && m.C == 0.0,
          "moment dev " + fmt("%.3e", dev) + ", max |D - A cos(a1+a2)| " + fmt("%.3e", worst)};
}

// 6. Free evolution.
Outcome free_evolution() {
  std::mt19937_64 gen(6);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_moments(gen, false);
    const auto model = lhv::free_evolution_model(m);
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double t1 = -5.0 + 0.5 * i, t2 = -5.0 + 0.5 * j;
        const double expected = m.A + m.B * t1 + m.C * t2 + m.D * t1 * t2;
        worst = std::max(worst, std::abs(lhv::exact_expectation(model, TimeSetting(t1), TimeSetting(t2)) - expected));
      }
  }
  return {worst <= 1e-12, "max dev " + fmt("%.3e", worst)};
}

std::vector<std::filesystem::path> bundled_scenarios() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(EPRLAB_SCENARIO_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// 7. Byte-identical CSV across runs and worker counts.
Outcome determinism() {
  int identical = 0, total = 0;
  std::string mismatch;
  for (const auto& path : bundled_scenarios()) {
    const auto sc = cli::load_scenario(path);
    const std::string a = cli::format_csv(cli::execute(sc, {std::nullopt, std::nullopt, 1}).rows);
    const std::string b = cli::format_csv(cli::execute(sc, {std::nullopt, std::nullopt, 1}).rows);
    const std::string c = cli::format_csv(cli::execute(sc, {std::nullopt, std::nullopt, 8}).rows);
    ++total;
    if (a == b && a == c) ++identical;
    else mismatch += " " + path.filename().string();
  }
  return {total > 0 && identical == total,
          std::to_string(identical) + "/" + std::to_string(total) + " scenarios identical" + mismatch};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. CLI end to end on the bundled SPIN_CHSH and EPR_QUADRATURE scenarios.
Outcome cli_end_to_end() {
  const auto out_dir = std::filesystem::temp_directory_path() / "eprlab_acceptance_cli";
  std::filesystem::remove_all(out_dir);
  std::string detail;
  bool pass = true;
  for (const char* name : {"spin_chsh", "epr_quadrature"}) {
    const std::string cmd = std::string("\"") + EPRLAB_CLI_PATH + "\" run \"" + EPRLAB_SCENARIO_DIR + "/" + name +
                            ".json\" --out-dir \"" + out_dir.string() + "\" > /dev/null";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    bool ok = code == 0;
    double max_z = -1.0;
    bool consistent = false;
    if (ok) {
      const auto summary = nlohmann::json::parse(slurp(out_dir / (std::string(name) + ".summary.json")));
      consistent = summary.at("consistency_pass").get<bool>();
      max_z = summary.at("max_abs_z").is_number() ? summary.at("max_abs_z").get<double>() : INFINITY;
      ok = consistent && max_z <= 5.0;
    }
    pass = pass && ok;
    detail += std::string(name) + ": exit " + std::to_string(code) + ", consistency " + (consistent ? "true" : "false") +
              ", max|z| " + fmt("%.3f", max_z) + "; ";
  }
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "singlet correlator equals -a.b", 1.0, singlet_correlator},
      {"AC2", "unbounded three-point model", 10.0, bell_counterexample},
      {"AC3", "CHSH contrast", 10.0, chsh_contrast},
      {"AC4", "quadrature representation theorem", 30.0, representation_theorem},
      {"AC5", "two-mode squeezed vacuum", 1.0, tmsv_scenario},
      {"AC6", "free-evolution representation", 5.0, free_evolution},
      {"AC7", "deterministic scenario output", 20.0, determinism},
      {"AC8", "CLI end to end", 120.0, cli_end_to_end},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] %s %s: %s (%.2f s / budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
