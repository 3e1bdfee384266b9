#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mzi/detection.hpp"
#include "mzi/loss.hpp"
#include "mzi/oracle.hpp"
#include "mzi/states.hpp"
#include "mzi/su2.hpp"
#include "mzi/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

using mzi::detection::Scheme;
using mzi::detection::SensitivitySample;
using mzi::su2::JState;

namespace {

std::vector<std::vector<mzi::su2::Complex>> matrix_rows(const mzi::linalg::CMatrix& m) {
  std::vector<std::vector<mzi::su2::Complex>> rows(static_cast<size_t>(m.size()));
  for (int r = 0; r < m.size(); ++r)
    for (int c = 0; c < m.size(); ++c) rows[static_cast<size_t>(r)].push_back(m(r, c));
  return rows;
}

}  // namespace

PYBIND11_MODULE(pymzi, m) {
  m.doc() = "Phase sensitivity of a Mach-Zehnder interferometer under parity "
            "detection, for Yurke, dual-Fock, NOON and intelligent inputs, with "
            "single-arm photon loss.";

  py::class_<JState>(m, "JState")
      .def_readonly("two_j", &JState::two_j)
      .def_readonly("amps", &JState::amps)
      .def("norm", &JState::norm)
      .def_static("basis", &JState::basis, "two_j"_a, "p"_a)
      .def("__repr__", [](const JState& s) {
        return "<JState N=" + std::to_string(s.two_j) + ">";
      });

  py::enum_<Scheme>(m, "Scheme")
      .value("parity", Scheme::parity)
      .value("jz", Scheme::jz);

  py::class_<SensitivitySample>(m, "SensitivitySample")
      .def_readonly("phi", &SensitivitySample::phi)
      .def_readonly("delta_phi", &SensitivitySample::delta_phi)
      .def_readonly("scheme", &SensitivitySample::scheme)
      .def_readonly("two_j", &SensitivitySample::two_j)
      .def_readonly("lambda_", &SensitivitySample::lambda)
      .def_readonly("divergent", &SensitivitySample::divergent)
      .def("__repr__", [](const SensitivitySample& s) {
        return "<SensitivitySample phi=" + std::to_string(s.phi) +
               " delta_phi=" + std::to_string(s.delta_phi) + ">";
      });

  // state generators
  m.def("yurke_state", &mzi::states::yurke_state, "two_j"_a);
  m.def("dual_fock_state", &mzi::states::dual_fock_state, "two_j"_a);
  m.def("noon_equivalent_input", &mzi::states::noon_equivalent_input, "two_j"_a);
  m.def("single_port_fock", &mzi::states::single_port_fock, "two_j"_a);
  m.def(
      "intelligent_state",
      [](int two_j, int m0, double eta) {
        return mzi::states::intelligent_state({two_j, m0, eta});
      },
      "two_j"_a, "m0"_a = 0, "eta"_a = 10.0);

  // rotations and matrix elements
  m.def("wigner_d", &mzi::su2::wigner_d, "two_j"_a, "two_m"_a, "two_n"_a, "theta"_a,
        "d^j_{mn}(theta) with doubled indices");
  m.def("rotate_x", &mzi::su2::rotate_x, "state"_a, "theta"_a);
  m.def("rotate_y", &mzi::su2::rotate_y, "state"_a, "theta"_a);
  m.def("rotate_z", &mzi::su2::rotate_z, "state"_a, "theta"_a);

  // detection
  m.def("parity_expectation", &mzi::detection::parity_expectation, "state"_a, "phi"_a);
  m.def("jz_expectation_and_variance", &mzi::detection::jz_expectation_and_variance,
        "state"_a, "phi"_a);
  m.def("sensitivity", &mzi::detection::sensitivity, "state"_a, "phi"_a, "scheme"_a);
  m.def("minimize_sensitivity", &mzi::detection::minimize_sensitivity, "state"_a, "scheme"_a);

  // loss
  m.def(
      "q_matrix",
      [](int two_j, double lam) { return matrix_rows(mzi::loss::QMatrix(two_j, lam).q); },
      "two_j"_a, "lambda_"_a, "Y_2 matrix elements Q_mn(lambda), row index m");
  m.def(
      "q_element",
      [](int two_j, int two_m, int two_n, double lam) {
        return mzi::loss::q_element(two_j, two_m, two_n, lam);
      },
      "two_j"_a, "two_m"_a, "two_n"_a, "lambda_"_a);
  m.def(
      "lossy_parity_moments",
      [](const JState& in, double phi, double lam) {
        return mzi::loss::lossy_parity_moments(in, phi, {lam});
      },
      "state"_a, "phi"_a, "lambda_"_a);
  m.def(
      "lossy_sensitivity",
      [](const JState& in, double phi, double lam) {
        return mzi::loss::lossy_sensitivity(in, phi, {lam});
      },
      "state"_a, "phi"_a, "lambda_"_a);
  m.def(
      "minimize_lossy_sensitivity",
      [](const JState& in, double lam) {
        return mzi::loss::minimize_lossy_sensitivity(in, {lam});
      },
      "state"_a, "lambda_"_a);
  m.def(
      "baseline_shot_noise",
      [](int two_j, double lam) { return mzi::loss::baseline_shot_noise(two_j, {lam}); },
      "two_j"_a, "lambda_"_a);
  m.def("sweep_lambda", &mzi::loss::sweep_lambda, "state"_a, "lambdas"_a, "scheme"_a);

  // brute-force oracle
  m.def("simulate_pipeline", &mzi::oracle::simulate_pipeline, "state"_a, "phi"_a, "lambda_"_a,
        "Fock-space oracle: (mean, second_moment) of the projected parity");

  // verification table
  m.def(
      "run_verification",
      [](int max_n) {
        py::list rows;
        for (const auto& r : mzi::verify::run_all(max_n))
          rows.append(py::make_tuple(r.name, r.n_photons, r.lambda, r.deviation, r.tolerance,
                                     r.pass));
        return rows;
      },
      "max_n"_a = 6);

  m.attr("__version__") = "1.0.0";
}
