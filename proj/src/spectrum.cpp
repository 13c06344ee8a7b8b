#include "tpjc/spectrum.hpp"

#include <cmath>
#include <sstream>

namespace tpjc {

namespace {

void require_index(int n) {
    if (n < 0) throw ParameterError("photon index must be non-negative");
}

double detuning_of(const ModelParams& p) {
    if (!p.detuning) throw ParameterError("detuning is undefined for these parameters");
    return *p.detuning;
}

double coupling_of(const ModelParams& p) {
    if (!p.lambda_eff) throw ParameterError("two-photon coupling is undefined for these parameters");
    return *p.lambda_eff;
}

}  // namespace

BlockHamiltonian block_hamiltonian(const ModelParams& params, int n) {
    require_index(n);
    const double delta = detuning_of(params);
    const double lambda = coupling_of(params);
    const double base = params.omega * n + 0.5 * params.omega0;
    BlockHamiltonian b;
    b.n = n;
    b.h11 = base + params.beta2 * n;
    b.h22 = base - delta + params.beta1 * (n + 2);
    b.h12 = lambda * std::sqrt((n + 1.0) * (n + 2.0));
    return b;
}

EigenPair exact_eigenvalues(const ModelParams& params, int n) {
    require_index(n);
    const double delta = detuning_of(params);
    const double lambda = coupling_of(params);
    const double b1 = params.beta1, b2 = params.beta2;
    const double center = params.omega * n + 0.5 * params.omega0 + 0.5 * b1 * (n + 2) +
                          0.5 * b2 * n - 0.5 * delta;
    // split = h22 − h11
    const double split = b1 * (n + 2) - b2 * (n + 1) + b2 - delta;
    const double half_root =
        0.5 * std::sqrt(split * split + 4.0 * lambda * lambda * (n + 1.0) * (n + 2.0));
    // |e,n⟩ sits at center − split/2, so it is the upper root when split ≤ 0.
    if (split <= 0.0) return {center + half_root, center - half_root};
    return {center - half_root, center + half_root};
}

DispersiveReport dispersive_report(const ModelParams& params, int n_max, double threshold) {
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ParameterError("dispersive threshold must lie in (0, 1)");
    const double gap = std::abs(detuning_of(params) - params.beta2);
    if (gap == 0.0) throw DispersiveError("δ = β₂: dispersive ratios are singular");

    DispersiveReport r;
    r.n_max = n_max;
    r.threshold = threshold;
    r.valid = true;
    r.ratios.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const DispersiveReport::Ratios q{params.beta1 * (n + 2) / gap, params.beta2 * (n + 1) / gap};
        // Stark coefficients share the sign of Δ; magnitudes decide validity.
        if (std::abs(q.excited) >= threshold || std::abs(q.ground) >= threshold) r.valid = false;
        r.ratios.push_back(q);
    }
    return r;
}

EigenPair dispersive_eigenvalues(const ModelParams& params, int n, double threshold) {
    require_index(n);
    const auto report = dispersive_report(params, n, threshold);
    if (!report.valid) {
        const auto& last = report.ratios.back();
        std::ostringstream os;
        os << "dispersive condition violated at n = " << n << " (ratios " << last.excited << ", "
           << last.ground << ", threshold " << threshold << ")";
        throw DispersiveError(os.str());
    }
    const double base = params.omega * n + 0.5 * params.omega0;
    const double shift = params.omega_shift * (n + 1.0) * (n + 2.0);
    return {base + params.beta2 * n + shift,
            base - detuning_of(params) + params.beta1 * (n + 2) - shift};
}

double effective_diagonal(const ModelParams& params, int n, AtomLevel level) {
    require_index(n);
    const double field = params.omega * n;
    if (level == AtomLevel::Excited)
        return field + 0.5 * params.omega0 + params.beta2 * n +
               params.omega_shift * (n + 1.0) * (n + 2.0);
    return field - 0.5 * params.omega0 + params.beta1 * n - params.omega_shift * n * (n - 1.0);
}

}  // namespace tpjc
