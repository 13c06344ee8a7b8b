#include "tpjc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tpjc {

namespace {

void require_kappa(double kappa) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        std::ostringstream os;
        os << "damping constant must be finite and non-negative, got " << kappa;
        throw ParameterError(os.str());
    }
}

// Fills the fields implied by (β₁, β₂, Ω) when no raw couplings exist.
void infer_implied(ModelParams& p) {
    const double product = p.beta1 * p.beta2;
    if (product != 0.0 && p.omega_shift != 0.0) p.detuning = p.beta2 + product / p.omega_shift;
    if (product >= 0.0) p.lambda_eff = std::sqrt(product);
}

}  // namespace

ModelParams build_params(const RawCouplings& raw) {
    if (raw.delta_int == 0.0) throw ParameterError("intermediate detuning Δ must be non-zero");
    require_kappa(raw.kappa);

    ModelParams p;
    p.omega = raw.omega;
    p.omega0 = raw.omega0;
    p.beta1 = raw.lambda1 * raw.lambda1 / raw.delta_int;
    p.beta2 = raw.lambda2 * raw.lambda2 / raw.delta_int;
    p.lambda_eff = raw.lambda1 * raw.lambda2 / raw.delta_int;
    p.detuning = raw.omega0 - 2.0 * raw.omega;
    p.kappa = raw.kappa;
    p.alpha = raw.alpha;
    p.raw = raw;

    double gap = *p.detuning - p.beta2;
    // Round-off in ω₀ − 2ω − β₂ must not turn an exact resonance into a huge Ω.
    const double scale = std::abs(raw.omega0) + 2.0 * std::abs(raw.omega) + std::abs(p.beta2);
    if (std::abs(gap) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) throw ParameterError("δ = β₂ makes Ω = β₁β₂/(δ−β₂) singular");
    if (raw.convention == OmegaConvention::AbsoluteGap) gap = std::abs(gap);
    p.omega_shift = p.beta1 * p.beta2 / gap;
    return p;
}

ModelParams build_params(const DimensionlessRatios& ratios) {
    return make_params(ratios.beta1, ratios.beta1 + ratios.beta_diff, 1.0, ratios.kappa,
                       ratios.alpha);
}

ModelParams make_params(double beta1, double beta2, double omega_shift, double kappa,
                        cplx alpha) {
    require_kappa(kappa);
    ModelParams p;
    p.beta1 = beta1;
    p.beta2 = beta2;
    p.omega_shift = omega_shift;
    p.kappa = kappa;
    p.alpha = alpha;
    infer_implied(p);
    return p;
}

ModelParams with_kappa(ModelParams p, double kappa) {
    require_kappa(kappa);
    p.kappa = kappa;
    if (p.raw) p.raw->kappa = kappa;
    return p;
}

ModelParams with_alpha(ModelParams p, cplx alpha) {
    p.alpha = alpha;
    if (p.raw) p.raw->alpha = alpha;
    return p;
}

double poisson_tail(double mean, int dim) {
    if (dim <= 0) return 1.0;
    if (mean <= 0.0) return 0.0;
    const double log_mean = std::log(mean);
    auto term = [&](int k) { return std::exp(-mean + k * log_mean - std::lgamma(k + 1.0)); };

    if (dim > mean) {
        // Terms decrease monotonically past the mode; sum upward until negligible.
        double sum = 0.0;
        for (int k = dim;; ++k) {
            const double t = term(k);
            sum += t;
            if (t <= sum * 1e-18 || t == 0.0) break;
        }
        return sum;
    }
    double head = 0.0;
    for (int k = 0; k < dim; ++k) head += term(k);
    return std::max(0.0, 1.0 - head);
}

double CoherentVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

CoherentVector coherent_vector(cplx alpha, int dim, double tail_ceiling) {
    if (dim < 1) throw ParameterError("coherent vector needs at least one Fock level");
    CoherentVector v;
    v.amplitudes.resize(static_cast<std::size_t>(dim));
    // Running product c_n = c_{n-1}·α/√n never forms n! explicitly.
    v.amplitudes[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) v.amplitudes[n] = v.amplitudes[n - 1] * alpha / std::sqrt(double(n));
    v.tail_bound = poisson_tail(std::norm(alpha), dim);
    if (v.tail_bound > tail_ceiling) {
        std::ostringstream os;
        os << "truncation at " << dim << " levels drops probability " << v.tail_bound
           << " for |alpha|^2 = " << std::norm(alpha) << " (ceiling " << tail_ceiling << ")";
        throw TruncationError(os.str());
    }
    return v;
}

int choose_truncation(cplx alpha, double horizon, double epsilon) {
    if (!(epsilon > 0.0)) throw ParameterError("truncation epsilon must be positive");
    if (horizon < 0.0) throw ParameterError("time horizon must be non-negative");
    const double mean = std::norm(alpha);
    int n = 0;
    while (poisson_tail(mean, n + 1) >= epsilon) ++n;
    return n;
}

FieldDensityMatrix::FieldDensityMatrix(CMatrix entries, double tail_bound)
    : entries_(std::move(entries)), tail_bound_(tail_bound) {
    if (entries_.rows() != entries_.cols()) throw ParameterError("density matrix must be square");
}

FieldDensityMatrix FieldDensityMatrix::outer(const CoherentVector& v) {
    const Eigen::Map<const Eigen::VectorXcd> c(v.amplitudes.data(), v.dim());
    return FieldDensityMatrix(c * c.adjoint(), v.tail_bound);
}

double FieldDensityMatrix::trace() const { return entries_.trace().real(); }

double FieldDensityMatrix::purity() const {
    // Tr ρ² = Σ|ρ_mn|² for Hermitian ρ.
    return entries_.cwiseAbs2().sum();
}

double FieldDensityMatrix::max_hermiticity_defect() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double FieldDensityMatrix::min_diagonal() const {
    return entries_.diagonal().real().minCoeff();
}

double max_abs_difference(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ParameterError("matrix dimensions differ");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace tpjc
