#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tpjc/harness.hpp"
#include "tpjc/lindblad_oracle.hpp"
#include "tpjc/liouville.hpp"
#include "tpjc/spectrum.hpp"

namespace py = pybind11;
using namespace tpjc;

#ifndef TPJC_VERSION
#define TPJC_VERSION "0.1.0"
#endif

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-photon Jaynes-Cummings model with Stark shift in a dissipative cavity";
    m.attr("__version__") = TPJC_VERSION;

    py::register_exception<Error>(m, "Error");
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_ValueError);
    py::register_exception<DispersiveError>(m, "DispersiveError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::enum_<OmegaConvention>(m, "OmegaConvention")
        .value("Signed", OmegaConvention::Signed)
        .value("AbsoluteGap", OmegaConvention::AbsoluteGap);
    py::enum_<AtomLevel>(m, "AtomLevel")
        .value("Excited", AtomLevel::Excited)
        .value("Ground", AtomLevel::Ground);
    py::enum_<Branch>(m, "Branch").value("Ground", Branch::Ground).value("Excited", Branch::Excited);

    py::class_<ModelParams>(m, "ModelParams")
        .def_readonly("omega", &ModelParams::omega)
        .def_readonly("omega0", &ModelParams::omega0)
        .def_readonly("beta1", &ModelParams::beta1)
        .def_readonly("beta2", &ModelParams::beta2)
        .def_readonly("omega_shift", &ModelParams::omega_shift)
        .def_readonly("kappa", &ModelParams::kappa)
        .def_readonly("alpha", &ModelParams::alpha)
        .def_readonly("detuning", &ModelParams::detuning)
        .def_readonly("lambda_eff", &ModelParams::lambda_eff)
        .def_property_readonly("dimensionless", &ModelParams::dimensionless)
        .def_property_readonly("mean_photons", &ModelParams::mean_photons);

    m.def(
        "params_from_ratios",
        [](double kappa, double beta_diff, double beta1, cplx alpha) {
            return build_params(DimensionlessRatios{kappa, beta1, beta_diff, alpha});
        },
        py::arg("kappa"), py::arg("beta_diff"), py::arg("beta1") = 1.0, py::arg("alpha") = cplx(1.0),
        "Model in units of Omega from kappa/Omega, (beta2-beta1)/Omega, beta1/Omega and alpha.");
    m.def(
        "params_from_couplings",
        [](double omega, double omega0, double lambda1, double lambda2, double delta_int, double kappa,
           cplx alpha, OmegaConvention convention) {
            return build_params(
                RawCouplings{omega, omega0, lambda1, lambda2, delta_int, kappa, alpha, convention});
        },
        py::arg("omega"), py::arg("omega0"), py::arg("lambda1"), py::arg("lambda2"),
        py::arg("delta_int"), py::arg("kappa") = 0.0, py::arg("alpha") = cplx(0.0),
        py::arg("convention") = OmegaConvention::Signed);
    m.def("make_params", &make_params, py::arg("beta1"), py::arg("beta2"), py::arg("omega_shift"),
          py::arg("kappa"), py::arg("alpha"));

    m.def("choose_truncation", &choose_truncation, py::arg("alpha"), py::arg("horizon"),
          py::arg("epsilon"));
    m.def(
        "coherent_vector",
        [](cplx alpha, int dim) {
            const auto v = coherent_vector(alpha, dim);
            return py::make_tuple(v.amplitudes, v.tail_bound);
        },
        py::arg("alpha"), py::arg("dim"), "Returns (amplitudes, tail_bound).");

    // spectrum
    m.def(
        "block_hamiltonian",
        [](const ModelParams& p, int n) {
            const auto b = block_hamiltonian(p, n);
            Eigen::Matrix2d h;
            h << b.h11, b.h12, b.h12, b.h22;
            return h;
        },
        py::arg("params"), py::arg("n"));
    m.def(
        "exact_eigenvalues",
        [](const ModelParams& p, int n) {
            const auto e = exact_eigenvalues(p, n);
            return py::make_tuple(e.plus, e.minus);
        },
        py::arg("params"), py::arg("n"));
    m.def(
        "dispersive_eigenvalues",
        [](const ModelParams& p, int n, double threshold) {
            const auto e = dispersive_eigenvalues(p, n, threshold);
            return py::make_tuple(e.plus, e.minus);
        },
        py::arg("params"), py::arg("n"), py::arg("threshold") = kDefaultDispersiveThreshold);
    m.def(
        "dispersive_valid",
        [](const ModelParams& p, int n_max, double threshold) {
            return dispersive_report(p, n_max, threshold).valid;
        },
        py::arg("params"), py::arg("n_max"), py::arg("threshold") = kDefaultDispersiveThreshold);
    m.def("effective_diagonal", &effective_diagonal, py::arg("params"), py::arg("n"),
          py::arg("level"));

    // closed form
    m.def(
        "kernel",
        [](const ModelParams& p, int mi, int ni, double t) {
            const auto k = kernel(p, mi, ni, t);
            return py::make_tuple(k.gamma, k.theta_g, k.theta_e);
        },
        py::arg("params"), py::arg("m"), py::arg("n"), py::arg("t"),
        "Returns (Gamma_mn, Theta_gmn, Theta_emn).");
    m.def(
        "field_state",
        [](const ModelParams& p, double t, int dim) { return field_state(p, t, dim).entries(); },
        py::arg("params"), py::arg("t"), py::arg("dim"));
    m.def(
        "branch_density",
        [](const ModelParams& p, Branch which, double t, int dim) {
            return branch_density(p, which, t, dim).matrix.entries();
        },
        py::arg("params"), py::arg("which"), py::arg("t"), py::arg("dim"));
    m.def("amplitude_moment", &amplitude_moment, py::arg("params"), py::arg("order"), py::arg("t"));
    m.def("linear_entropy", &linear_entropy, py::arg("params"), py::arg("t"), py::arg("dim"),
          py::arg("tail_ceiling") = kDefaultTailCeiling);
    m.def("superop_commutators_check", &superop_commutators_check, py::arg("dim"));

    // oracle
    m.def(
        "oracle_field_state",
        [](const ModelParams& p, double t, int dim, double step) {
            oracle::IntegratorConfig ic;
            ic.step = step;
            const auto initial = oracle::initial_joint_state(p, dim + oracle::kGuardLevels);
            const auto final_state = oracle::propagate(p, initial, t, ic);
            return CMatrix(oracle::reduce_field(final_state).entries().topLeftCorner(dim, dim));
        },
        py::arg("params"), py::arg("t"), py::arg("dim"), py::arg("step") = 1e-3,
        "Reduced field matrix from direct RK4 integration of the master equation.");
    m.def(
        "unitary_reference",
        [](const ModelParams& p, double t, int dim) { return oracle::unitary_reference(p, t, dim).entries(); },
        py::arg("params"), py::arg("t"), py::arg("dim"));

    // harness
    m.def(
        "entropy_trace",
        [](const ModelParams& p, const std::vector<double>& times, double epsilon) {
            const auto trace = harness::compute_trace(p, times, epsilon);
            std::vector<std::vector<double>> rows;
            for (const auto& r : trace.rows) rows.push_back({r.omega_t, r.s_f, r.trace, r.tail, r.abs_a1});
            return rows;
        },
        py::arg("params"), py::arg("times"), py::arg("epsilon") = 1e-12,
        "Rows of (omega_t, s_f, trace, tail, abs_a1).");
}
