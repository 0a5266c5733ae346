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

// Python bindings for the main correlation, model and estimation operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "eprlab/correlators.hpp"
#include "eprlab/estimator.hpp"
#include "eprlab/gaussian_states.hpp"
#include "eprlab/lhv.hpp"
#include "eprlab/scenario.hpp"

namespace py = pybind11;
using namespace eprlab;

namespace {

py::object sup_to_py(const lhv::SupBound& b) {
  if (std::holds_alternative<lhv::Unbounded>(b)) return py::str("unbounded");
  return py::float_(std::get<double>(b));
}

Setting to_setting(py::handle h) {
  if (py::isinstance<op::UnitVector3>(h)) return h.cast<op::UnitVector3>();
  if (py::isinstance<QuadratureSetting>(h)) return h.cast<QuadratureSetting>();
  if (py::isinstance<TimeSetting>(h)) return h.cast<TimeSetting>();
  throw py::type_error("setting must be UnitVector3, QuadratureSetting or TimeSetting");
}

}  // namespace

PYBIND11_MODULE(_eprlab, m) {
  m.doc() = "Quantum correlators, local hidden-variable models and Monte Carlo checks.";

  // Translators run newest first, so the subclass is registered last.
  const auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DegenerateMoment>(m, "DegenerateMoment", validation.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::class_<op::UnitVector3>(m, "UnitVector3")
      .def(py::init<double, double, double>())
      .def_static("normalized", &op::UnitVector3::normalized)
      .def_static("in_xz_plane", &op::UnitVector3::in_xz_plane)
      .def_property_readonly("components", &op::UnitVector3::components)
      .def("dot", &op::UnitVector3::dot)
      .def("__repr__", [](const op::UnitVector3& a) {
        std::ostringstream os;
        os << "UnitVector3(" << a[0] << ", " << a[1] << ", " << a[2] << ")";
        return os.str();
      });

  py::class_<QuadratureSetting>(m, "QuadratureSetting")
      .def(py::init<double>())
      .def_property_readonly("alpha", &QuadratureSetting::alpha);
  py::class_<TimeSetting>(m, "TimeSetting").def(py::init<double>()).def_property_readonly("t", &TimeSetting::t);
  m.attr("MOMENTUM_ANGLE") = kMomentumAngle.alpha();

  py::class_<gaussian::MomentMatrix>(m, "MomentMatrix")
      .def(py::init<double, double, double, double>(), py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"))
      .def_readonly("A", &gaussian::MomentMatrix::A)
      .def_readonly("B", &gaussian::MomentMatrix::B)
      .def_readonly("C", &gaussian::MomentMatrix::C)
      .def_readonly("D", &gaussian::MomentMatrix::D)
      .def("as_tuple", [](const gaussian::MomentMatrix& mm) { return py::make_tuple(mm.A, mm.B, mm.C, mm.D); });

  py::class_<gaussian::GaussianState>(m, "GaussianState")
      .def(py::init<const gaussian::Matrix4&, const gaussian::Vector4&>(), py::arg("cov"),
           py::arg("mean") = gaussian::Vector4::Zero())
      .def_property_readonly("cov", &gaussian::GaussianState::cov)
      .def_property_readonly("mean", &gaussian::GaussianState::mean)
      .def("to_json", [](const gaussian::GaussianState& s) { return nlohmann::json(s).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return gaussian::gaussian_state_from_json(nlohmann::json::parse(text));
      });

  m.def("tmsv", &gaussian::tmsv, py::arg("r"));
  m.def("extract_moments", &gaussian::extract_moments);
  m.def("uncertainty_check", [](const gaussian::GaussianState& s) {
    const auto r = gaussian::uncertainty_check(s);
    return py::make_tuple(r.physical, r.min_eigenvalue);
  });

  m.def("spin_correlation", &corr::spin_correlation);
  m.def("quadrature_correlation", [](const gaussian::MomentMatrix& mm, double a1, double a2) {
    return corr::quadrature_correlation(mm, QuadratureSetting(a1), QuadratureSetting(a2));
  });
  m.def("free_evolution_correlation", [](const gaussian::MomentMatrix& mm, double t1, double t2) {
    return corr::free_evolution_correlation(mm, TimeSetting(t1), TimeSetting(t2));
  });
  m.def("spin_chsh", [](double a, double ap, double b, double bp) {
    const corr::ChshSettings s(op::UnitVector3::in_xz_plane(a), op::UnitVector3::in_xz_plane(ap),
                               op::UnitVector3::in_xz_plane(b), op::UnitVector3::in_xz_plane(bp));
    return corr::chsh_value(corr::spin_correlator(), s);
  });

  py::enum_<lhv::QuadratureVariant>(m, "QuadratureVariant")
      .value("PAPER_EXPLICIT", lhv::QuadratureVariant::kPaperExplicit)
      .value("GENERAL_FACTORIZATION", lhv::QuadratureVariant::kGeneralFactorization);
  py::enum_<lhv::Spectrum>(m, "Spectrum")
      .value("SPIN_PM1", lhv::Spectrum::kSpinPm1)
      .value("QUADRATURE_REAL_LINE", lhv::Spectrum::kQuadratureRealLine);

  py::class_<lhv::HiddenVariableModel>(m, "HiddenVariableModel")
      .def_property_readonly("is_finite",
                             [](const lhv::HiddenVariableModel& h) { return h.kind() == lhv::SampleSpaceKind::kFinite; })
      .def("to_json", [](const lhv::HiddenVariableModel& h) { return lhv::to_json(h).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return lhv::finite_model_from_json(nlohmann::json::parse(text));
      });

  m.def("unbounded_spin_model", &lhv::unbounded_spin_model);
  m.def("quadrature_model", &lhv::quadrature_model, py::arg("m"),
        py::arg("variant") = lhv::QuadratureVariant::kGeneralFactorization);
  m.def("free_evolution_model", &lhv::free_evolution_model);
  m.def("exact_expectation", [](const lhv::HiddenVariableModel& h, py::handle s1, py::handle s2) {
    return lhv::exact_expectation(h, to_setting(s1), to_setting(s2));
  });
  m.def("sup_bound", [](const lhv::HiddenVariableModel& h) { return sup_to_py(lhv::sup_bound(h)); });
  m.def("spectrum_compatibility", [](const lhv::HiddenVariableModel& h, lhv::Spectrum s) {
    const auto r = lhv::spectrum_compatibility(h, s);
    return py::make_tuple(r.pass, sup_to_py(r.sup), r.detail);
  });

  py::class_<est::CorrelationEstimate>(m, "CorrelationEstimate")
      .def_readonly("mean", &est::CorrelationEstimate::mean)
      .def_readonly("stderr", &est::CorrelationEstimate::std_error)
      .def_readonly("n", &est::CorrelationEstimate::n)
      .def_readonly("seed", &est::CorrelationEstimate::seed);
  m.def(
      "mc_estimate",
      [](const lhv::HiddenVariableModel& h, py::handle s1, py::handle s2, std::uint64_t n, std::uint64_t seed,
         unsigned workers) {
        const Setting a = to_setting(s1), b = to_setting(s2);
        py::gil_scoped_release release;
        return est::mc_estimate(h, a, b, n, seed, {workers});
      },
      py::arg("model"), py::arg("s1"), py::arg("s2"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);
  m.def("compare", [](double exact, const est::CorrelationEstimate& e) {
    const auto r = est::compare(exact, e);
    return py::make_tuple(r.z_score, r.inconsistent);
  });

  m.def(
      "run_scenario",
      [](const std::filesystem::path& path, const std::filesystem::path& out_dir, std::optional<std::uint64_t> seed,
         std::optional<std::uint64_t> samples, unsigned workers) {
        std::ostringstream out, err;
        const int code = cli::run_scenario(path, out_dir, {seed, samples, workers}, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("path"), py::arg("out_dir"), py::arg("seed") = py::none(), py::arg("samples") = py::none(),
      py::arg("workers") = 1);
}
