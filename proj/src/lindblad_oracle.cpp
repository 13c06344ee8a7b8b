#include "tpjc/lindblad_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tpjc::oracle {

MasterEquation::MasterEquation(const ModelParams& params, int dim_field)
    : dim_field_(dim_field), kappa_(params.kappa) {
    if (dim_field < 1) throw ParameterError("field dimension must be positive");
    const int d = dim_field;
    const double b1 = params.beta1, b2 = params.beta2, w = params.omega_shift;

    energies_.resize(2 * d);
    Eigen::VectorXd photons(2 * d);
    for (int n = 0; n < d; ++n) {
        energies_(n) = b2 * n + w * (n + 1.0) * (n + 2.0);
        energies_(d + n) = b1 * n - w * n * (n - 1.0);
        photons(n) = photons(d + n) = n;
    }
    rates_.resize(2 * d, 2 * d);
    for (int j = 0; j < 2 * d; ++j)
        for (int i = 0; i < 2 * d; ++i)
            rates_(i, j) = cplx(-kappa_ * (photons(i) + photons(j)), -(energies_(i) - energies_(j)));

    feed_.resize(std::max(d - 1, 0), std::max(d - 1, 0));
    for (int n = 0; n + 1 < d; ++n)
        for (int m = 0; m + 1 < d; ++m) feed_(m, n) = 2.0 * kappa_ * std::sqrt((m + 1.0) * (n + 1.0));
}

CMatrix MasterEquation::apply(const CMatrix& rho) const {
    const int d = dim_field_;
    if (rho.rows() != 2 * d || rho.cols() != 2 * d) {
        std::ostringstream os;
        os << "joint state is " << rho.rows() << "x" << rho.cols() << ", expected " << 2 * d;
        throw ParameterError(os.str());
    }
    CMatrix out = rates_.cwiseProduct(rho);
    if (kappa_ != 0.0 && d > 1) {
        // 2κ aρa†: a lowers the photon number inside each atomic block only.
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                out.block(a * d, b * d, d - 1, d - 1) +=
                    feed_.cwiseProduct(rho.block(a * d + 1, b * d + 1, d - 1, d - 1));
    }
    return out;
}

JointState initial_joint_state(const ModelParams& params, int dim_field, double tail_ceiling) {
    const auto c = coherent_vector(params.alpha, dim_field, tail_ceiling);
    Eigen::VectorXcd psi(2 * dim_field);
    const double s = 1.0 / std::sqrt(2.0);
    for (int n = 0; n < dim_field; ++n) psi(n) = psi(dim_field + n) = s * c.amplitudes[n];
    return {dim_field, psi * psi.adjoint(), 0.0};
}

CMatrix generator_apply(const ModelParams& params, const JointState& rho) {
    return MasterEquation(params, rho.dim_field).apply(rho.rho);
}

namespace {

void rk4_step(const MasterEquation& eq, CMatrix& rho, double h) {
    const CMatrix k1 = eq.apply(rho);
    const CMatrix k2 = eq.apply(rho + 0.5 * h * k1);
    const CMatrix k3 = eq.apply(rho + 0.5 * h * k2);
    const CMatrix k4 = eq.apply(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const MasterEquation& eq, const JointState& initial,
                     const std::vector<double>& times, double step) {
    Trajectory traj;
    CMatrix rho = initial.rho;
    const double trace0 = rho.trace().real();
    double t = initial.t;
    for (double target : times) {
        const double span = target - t;
        // Uniform steps per segment, no longer than `step`.
        const long n = span > 0.0 ? static_cast<long>(std::ceil(span / step - 1e-9)) : 0;
        const double h = n > 0 ? span / n : 0.0;
        for (long s = 0; s < n; ++s) {
            rk4_step(eq, rho, h);
            traj.max_trace_drift =
                std::max(traj.max_trace_drift, std::abs(rho.trace().real() - trace0));
        }
        traj.steps += n;
        t = target;
        traj.samples.push_back({initial.dim_field, rho, target});
    }
    return traj;
}

}  // namespace

Trajectory propagate_trajectory(const ModelParams& params, const JointState& initial,
                                const std::vector<double>& times, const IntegratorConfig& config) {
    if (!(config.step > 0.0)) throw ParameterError("integrator step must be positive");
    double prev = initial.t;
    for (double t : times) {
        if (t < prev) throw ParameterError("sample times must be ascending and not before the initial time");
        prev = t;
    }
    const MasterEquation eq(params, initial.dim_field);
    auto traj = integrate(eq, initial, times, config.step);
    if (config.check_convergence) {
        const auto fine = integrate(eq, initial, times, 0.5 * config.step);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double diff = max_abs_difference(traj.samples[i].rho, fine.samples[i].rho);
            if (diff > config.halving_tolerance) {
                std::ostringstream os;
                os << "step halving changed the state by " << diff << " at t = " << times[i]
                   << " (step " << config.step << ", tolerance " << config.halving_tolerance << ")";
                throw ConvergenceError(os.str());
            }
        }
    }
    return traj;
}

JointState propagate(const ModelParams& params, const JointState& initial, double t_end,
                     const IntegratorConfig& config) {
    if (t_end < initial.t) throw ParameterError("t_end precedes the initial time");
    return propagate_trajectory(params, initial, {t_end}, config).samples.back();
}

FieldDensityMatrix reduce_field(const JointState& state) {
    const int d = state.dim_field;
    CMatrix field = state.rho.block(0, 0, d, d) + state.rho.block(d, d, d, d);
    const double missing = std::max(0.0, 1.0 - field.trace().real());
    return FieldDensityMatrix(std::move(field), missing);
}

FieldDensityMatrix unitary_reference(const ModelParams& params, double t, int dim,
                                     double tail_ceiling) {
    if (params.kappa != 0.0) throw ParameterError("unitary reference requires kappa = 0");
    if (t < 0.0) throw ParameterError("time must be non-negative");
    const auto c = coherent_vector(params.alpha, dim, tail_ceiling);
    const MasterEquation eq(params, dim);
    const auto& energy = eq.hamiltonian_diagonal();
    CMatrix rho(dim, dim);
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            const cplx excited = std::exp(cplx(0.0, -(energy(m) - energy(n)) * t));
            const cplx ground = std::exp(cplx(0.0, -(energy(dim + m) - energy(dim + n)) * t));
            rho(m, n) = 0.5 * c.amplitudes[m] * std::conj(c.amplitudes[n]) * (excited + ground);
        }
    }
    return FieldDensityMatrix(std::move(rho), c.tail_bound);
}

double coherence_block_norm(const JointState& state) {
    const int d = state.dim_field;
    return std::max(state.rho.block(0, d, d, d).cwiseAbs().maxCoeff(),
                    state.rho.block(d, 0, d, d).cwiseAbs().maxCoeff());
}

double min_eigenvalue(const JointState& state) {
    // Symmetrize so round-off asymmetry does not leak into the spectrum.
    const CMatrix h = 0.5 * (state.rho + state.rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace tpjc::oracle
