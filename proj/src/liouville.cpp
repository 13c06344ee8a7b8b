#include "tpjc/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace tpjc {

namespace {

void require_time(double t) {
    if (!(t >= 0.0)) throw ParameterError("time must be non-negative");
}

// Poisson weights e^{−|α|²}|α|^{2m}/m! for m < dim.
std::vector<double> photon_weights(double mean, int dim) {
    std::vector<double> w(static_cast<std::size_t>(dim));
    w[0] = std::exp(-mean);
    for (int m = 1; m < dim; ++m) w[m] = w[m - 1] * mean / m;
    return w;
}

}  // namespace

KernelValue kernel(const ModelParams& params, int m, int n, double t) {
    if (m < 0 || n < 0) throw ParameterError("Fock indices must be non-negative");
    require_time(t);
    const double kappa = params.kappa;
    const double omega = params.omega_shift;
    const double k = m - n;
    const double nbar = params.mean_photons();

    KernelValue v;
    v.m = m;
    v.n = n;
    v.t = t;

    // Damping correction κ|α|²(1 − e^{−2κ_g t})/κ_g split into real and imaginary parts.
    double gamma_extra = 0.0;
    double phase_extra = 0.0;
    if (kappa > 0.0) {
        const double decay = std::exp(-2.0 * kappa * t);
        const double angle = 2.0 * omega * k * t;
        const double half_sin = std::sin(0.5 * angle);
        // 1 − e^{−2κt}cos(angle), accurate for small κt and small angle.
        const double real_part = -std::expm1(-2.0 * kappa * t) + decay * 2.0 * half_sin * half_sin;
        const double imag_part = decay * std::sin(angle);
        const double scale = nbar * kappa / (kappa * kappa + omega * omega * k * k);
        gamma_extra = scale * (kappa * real_part + omega * k * imag_part);
        phase_extra = scale * (omega * k * real_part - kappa * imag_part);
    }

    const double quadratic = omega * (double(m) * m - double(n) * n) * t;
    const double omega_g = params.beta1 + omega;
    const double omega_e = params.beta2 + 3.0 * omega;
    v.gamma = -kappa * (m + n) * t + gamma_extra;
    v.theta_g = -omega_g * k * t + quadratic + phase_extra;
    v.theta_e = -omega_e * k * t - quadratic - phase_extra;
    return v;
}

LiouvillianSpec liouvillian_spec(const ModelParams& params, Branch which) {
    LiouvillianSpec s;
    s.which = which;
    s.kappa = params.kappa;
    s.omega_shift = params.omega_shift;
    s.omega_branch = which == Branch::Ground ? params.beta1 + params.omega_shift
                                             : params.beta2 + 3.0 * params.omega_shift;
    return s;
}

Superoperators build_superoperators(int dim) {
    if (dim < 1) throw ParameterError("superoperator dimension must be positive");
    const int size = dim * dim;
    auto idx = [dim](int m, int n) { return m + n * dim; };
    Superoperators ops;
    ops.dim = dim;
    ops.F = CMatrix::Zero(size, size);
    ops.M = CMatrix::Zero(size, size);
    ops.P = CMatrix::Zero(size, size);
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            ops.M(idx(m, n), idx(m, n)) = double(m);
            ops.P(idx(m, n), idx(m, n)) = double(n);
            // (aρa†)_mn = √((m+1)(n+1)) ρ_{m+1,n+1}
            if (m + 1 < dim && n + 1 < dim)
                ops.F(idx(m, n), idx(m + 1, n + 1)) = std::sqrt((m + 1.0) * (n + 1.0));
        }
    }
    return ops;
}

bool commutators_hold(const Superoperators& ops, double tol) {
    const int dim = ops.dim;
    const CMatrix fm = ops.F * ops.M - ops.M * ops.F - ops.F;
    const CMatrix fp = ops.F * ops.P - ops.P * ops.F - ops.F;
    const CMatrix mp = ops.M * ops.P - ops.P * ops.M;
    // Column idx(m, n) is the image of the matrix unit |m⟩⟨n|.
    for (int n = 0; n + 1 < dim; ++n) {
        for (int m = 0; m + 1 < dim; ++m) {
            const int col = m + n * dim;
            if (fm.col(col).cwiseAbs().maxCoeff() > tol) return false;
            if (fp.col(col).cwiseAbs().maxCoeff() > tol) return false;
            if (mp.col(col).cwiseAbs().maxCoeff() > tol) return false;
        }
    }
    return true;
}

bool superop_commutators_check(int dim) {
    if (dim < 2) throw ParameterError("commutator check needs dim >= 2");
    return commutators_hold(build_superoperators(dim));
}

CMatrix liouvillian_matrix(const LiouvillianSpec& spec, int dim) {
    const auto ops = build_superoperators(dim);
    const cplx i{0.0, 1.0};
    const double sign = spec.which == Branch::Ground ? 1.0 : -1.0;
    const CMatrix m2 = ops.M * ops.M;
    const CMatrix p2 = ops.P * ops.P;
    return 2.0 * spec.kappa * ops.F + sign * i * spec.omega_shift * (m2 - p2) -
           (spec.kappa + i * spec.omega_branch) * ops.M -
           (spec.kappa - i * spec.omega_branch) * ops.P;
}

namespace {

CMatrix branch_entries(const ModelParams& params, Branch which, double t,
                       const CoherentVector& c, const KernelFn& kernel_fn) {
    const int dim = c.dim();
    CMatrix rho(dim, dim);
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            const auto kv = kernel_fn(params, m, n, t);
            rho(m, n) = 0.5 * c.amplitudes[m] * std::conj(c.amplitudes[n]) *
                        std::exp(cplx(kv.gamma, kv.theta(which)));
        }
    }
    return rho;
}

double decayed_tail(const ModelParams& params, double t, int dim) {
    return poisson_tail(params.mean_photons() * std::exp(-2.0 * params.kappa * t), dim);
}

}  // namespace

BranchDensity branch_density(const ModelParams& params, Branch which, double t, int dim,
                             double tail_ceiling) {
    require_time(t);
    const auto c = coherent_vector(params.alpha, dim, tail_ceiling);
    return {which, FieldDensityMatrix(branch_entries(params, which, t, c, kernel),
                                      0.5 * decayed_tail(params, t, dim))};
}

FieldDensityMatrix field_state(const ModelParams& params, double t, int dim,
                               double tail_ceiling) {
    return field_state(params, t, dim, KernelFn(kernel), tail_ceiling);
}

FieldDensityMatrix field_state(const ModelParams& params, double t, int dim,
                               const KernelFn& kernel_fn, double tail_ceiling) {
    require_time(t);
    const auto c = coherent_vector(params.alpha, dim, tail_ceiling);
    CMatrix rho = branch_entries(params, Branch::Ground, t, c, kernel_fn) +
                  branch_entries(params, Branch::Excited, t, c, kernel_fn);
    return FieldDensityMatrix(std::move(rho), decayed_tail(params, t, dim));
}

cplx amplitude_moment(const ModelParams& params, int order, double t) {
    if (order < 1) throw ParameterError("moment order must be at least 1");
    require_time(t);
    const double nbar = params.mean_photons();
    const double decay = std::exp(-2.0 * params.kappa * t);
    const double angle = 2.0 * params.omega_shift * order * t;
    const auto kv = kernel(params, order, 0, t);
    const double magnitude = kv.gamma + nbar * (decay * std::cos(angle) - 1.0);
    const double swing = nbar * decay * std::sin(angle);
    const cplx phases = std::exp(cplx(0.0, swing + kv.theta_g)) +
                        std::exp(cplx(0.0, -swing + kv.theta_e));
    return 0.5 * std::pow(params.alpha, order) * std::exp(magnitude) * phases;
}

cplx moment_from_state(const FieldDensityMatrix& rho, int order) {
    if (order < 1) throw ParameterError("moment order must be at least 1");
    // Tr(aⁿρ) = Σ_m ⟨m|aⁿ|m+n⟩ ρ_{m+n,m},  ⟨m|aⁿ|m+n⟩ = √((m+n)!/m!)
    cplx sum = 0.0;
    for (int m = 0; m + order < rho.dim(); ++m) {
        double factor = 1.0;
        for (int j = m + 1; j <= m + order; ++j) factor *= std::sqrt(double(j));
        sum += factor * rho(m + order, m);
    }
    return sum;
}

double linear_entropy(const ModelParams& params, double t, int dim, double tail_ceiling) {
    require_time(t);
    const auto c = coherent_vector(params.alpha, dim, tail_ceiling);
    const auto w = photon_weights(params.mean_photons(), c.dim());
    double purity = 0.0;
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            const double weight = w[m] * w[n];
            if (weight < 1e-18) continue;
            const auto kv = kernel(params, m, n, t);
            const double half = std::cos(0.5 * (kv.theta_g - kv.theta_e));
            purity += weight * std::exp(2.0 * kv.gamma) * half * half;
        }
    }
    return 1.0 - purity;
}

double linear_entropy_from_state(const FieldDensityMatrix& rho) { return 1.0 - rho.purity(); }

std::vector<double> linear_entropy_grid(const ModelParams& params, const std::vector<double>& times,
                                        int dim, unsigned threads, double tail_ceiling) {
    std::vector<double> out(times.size());
    const std::size_t workers = std::max(1u, threads);
    const std::size_t chunk = (times.size() + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::size_t begin = 0; begin < times.size(); begin += chunk) {
        const std::size_t end = std::min(times.size(), begin + chunk);
        jobs.push_back(std::async(std::launch::async, [&, begin, end] {
            for (std::size_t i = begin; i < end; ++i)
                out[i] = linear_entropy(params, times[i], dim, tail_ceiling);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

}  // namespace tpjc
