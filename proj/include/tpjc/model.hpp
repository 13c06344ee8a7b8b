#pragma once

// Model constants, coherent-state amplitudes and the truncated field density
// matrix shared by the closed-form and brute-force paths.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tpjc/errors.hpp"

namespace tpjc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTailCeiling = 1e-10;

// How Ω = β₁β₂/(δ−β₂) treats the sign of the gap. Signed is the default.
enum class OmegaConvention { Signed, AbsoluteGap };

// Couplings before adiabatic elimination of the intermediate level.
struct RawCouplings {
    double omega = 0.0;      // field frequency
    double omega0 = 0.0;     // atomic transition frequency
    double lambda1 = 0.0;    // |i>-|e> coupling
    double lambda2 = 0.0;    // |i>-|g> coupling
    double delta_int = 0.0;  // intermediate-level detuning Δ
    double kappa = 0.0;
    cplx alpha{0.0, 0.0};
    OmegaConvention convention = OmegaConvention::Signed;
};

// Everything measured in units of Ω, so the stored Ω is exactly 1.
struct DimensionlessRatios {
    double kappa = 0.0;       // κ/Ω
    double beta1 = 1.0;       // β₁/Ω
    double beta_diff = 0.0;   // (β₂−β₁)/Ω
    cplx alpha{0.0, 0.0};     // |α|² is the mean photon number n̄
};

struct ModelParams {
    double omega = 0.0;   // zero in dimensionless mode (interaction frame)
    double omega0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double omega_shift = 0.0;  // Ω
    double kappa = 0.0;
    cplx alpha{0.0, 0.0};

    // δ = ω₀ − 2ω in raw mode; in dimensionless mode the value implied by
    // Ω = β₁β₂/(δ−β₂) when β₁β₂ ≠ 0.
    std::optional<double> detuning;
    // λ = λ₁λ₂/Δ in raw mode; √(β₁β₂) in dimensionless mode when β₁β₂ ≥ 0.
    std::optional<double> lambda_eff;
    // Present only when the model was built from raw couplings.
    std::optional<RawCouplings> raw;

    double mean_photons() const { return std::norm(alpha); }
    bool dimensionless() const { return !raw.has_value(); }
};

ModelParams build_params(const RawCouplings& raw);
ModelParams build_params(const DimensionlessRatios& ratios);

// Directly specified (β₁, β₂, Ω, κ, α), e.g. for invariance studies where Ω must
// stay fixed while the β's move. No raw couplings are recorded.
ModelParams make_params(double beta1, double beta2, double omega_shift, double kappa,
                        cplx alpha);

// Returns a copy with κ and α replaced.
ModelParams with_kappa(ModelParams p, double kappa);
ModelParams with_alpha(ModelParams p, cplx alpha);

// P(X ≥ dim) for X ~ Poisson(mean): probability dropped by keeping levels 0..dim-1.
double poisson_tail(double mean, int dim);

struct CoherentVector {
    std::vector<cplx> amplitudes;
    double tail_bound = 0.0;

    int dim() const { return static_cast<int>(amplitudes.size()); }
    double norm_squared() const;
};

// αⁿe^{−|α|²/2}/√(n!) for n < dim. Throws TruncationError when the dropped tail
// exceeds `tail_ceiling`.
CoherentVector coherent_vector(cplx alpha, int dim, double tail_ceiling = kDefaultTailCeiling);

// Smallest N with P(X > N) < epsilon for the initial photon distribution. Damping
// only shrinks the photon number, so the bound holds for every t ≤ horizon.
int choose_truncation(cplx alpha, double horizon, double epsilon);

class FieldDensityMatrix {
public:
    FieldDensityMatrix() = default;
    FieldDensityMatrix(CMatrix entries, double tail_bound);

    static FieldDensityMatrix outer(const CoherentVector& v);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const CMatrix& entries() const { return entries_; }
    cplx operator()(int m, int n) const { return entries_(m, n); }
    double tail_bound() const { return tail_bound_; }

    double trace() const;
    // Tr ρ²
    double purity() const;
    double max_hermiticity_defect() const;
    double min_diagonal() const;

private:
    CMatrix entries_;
    double tail_bound_ = 0.0;
};

double max_abs_difference(const CMatrix& a, const CMatrix& b);

}  // namespace tpjc
