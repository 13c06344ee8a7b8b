#pragma once

// Closed-form dissipative evolution of the reduced field state.
//
// The field matrix splits into the ground and excited atomic branches,
// ρ_F = ρ_gg + ρ_ee. Each branch evolves under its own Liouvillian
//
//   𝓛_gg = 2κ𝓕 + iΩ(𝓜² − 𝓟²) − (κ + iΩ_g)𝓜 − (κ − iΩ_g)𝓟,   Ω_g = β₁ + Ω
//   𝓛_ee = 2κ𝓕 − iΩ(𝓜² − 𝓟²) − (κ + iΩ_e)𝓜 − (κ − iΩ_e)𝓟,   Ω_e = β₂ + 3Ω
//
// with 𝓕ρ = aρa†, 𝓜ρ = a†aρ, 𝓟ρ = ρa†a. Starting from ½|α⟩⟨α| in each branch,
// the number-basis element (m, n) picks up exp(Γ_mn + iΘ_mn) where, writing
// k = m − n and κ_g = κ − iΩk, κ_e = κ + iΩk,
//
//   Γ_mn + iΘ_imn = −κ_i(m+n)t − iΩ_i k t + κ|α|²(1 − e^{−2κ_i t})/κ_i.
//
// Γ is common to both branches. The phase correction has the same size and
// opposite sign in the two branches.

#include <functional>
#include <vector>

#include "tpjc/model.hpp"

namespace tpjc {

enum class Branch { Ground, Excited };

struct KernelValue {
    int m = 0;
    int n = 0;
    double t = 0.0;
    double gamma = 0.0;    // Γ_mn(t), log-amplitude
    double theta_g = 0.0;  // Θ_gmn(t)
    double theta_e = 0.0;  // Θ_emn(t)

    double theta(Branch b) const { return b == Branch::Ground ? theta_g : theta_e; }
};

// At κ = 0 the damping terms vanish identically; no 0/0 forms are evaluated.
KernelValue kernel(const ModelParams& params, int m, int n, double t);

using KernelFn = std::function<KernelValue(const ModelParams&, int, int, double)>;

struct LiouvillianSpec {
    Branch which = Branch::Ground;
    double omega_branch = 0.0;  // Ω_g or Ω_e
    double kappa = 0.0;
    double omega_shift = 0.0;
};

LiouvillianSpec liouvillian_spec(const ModelParams& params, Branch which);

// 𝓕, 𝓜, 𝓟 as dim²×dim² matrices acting on column-major vec(ρ).
struct Superoperators {
    int dim = 0;
    CMatrix F;
    CMatrix M;
    CMatrix P;
};

Superoperators build_superoperators(int dim);

// [𝓕,𝓜] = 𝓕, [𝓕,𝓟] = 𝓕, [𝓜,𝓟] = 0 on matrix units |m⟩⟨n| with m, n < dim − 1.
bool commutators_hold(const Superoperators& ops, double tol = 1e-12);
bool superop_commutators_check(int dim);

CMatrix liouvillian_matrix(const LiouvillianSpec& spec, int dim);

struct BranchDensity {
    Branch which = Branch::Ground;
    FieldDensityMatrix matrix;
};

BranchDensity branch_density(const ModelParams& params, Branch which, double t, int dim,
                             double tail_ceiling = kDefaultTailCeiling);

FieldDensityMatrix field_state(const ModelParams& params, double t, int dim,
                               double tail_ceiling = kDefaultTailCeiling);

// Same evaluation with a caller-supplied kernel; used by the validation self-test.
FieldDensityMatrix field_state(const ModelParams& params, double t, int dim,
                               const KernelFn& kernel_fn,
                               double tail_ceiling = kDefaultTailCeiling);

// ⟨aⁿ⟩ from the closed-form moment expression.
cplx amplitude_moment(const ModelParams& params, int order, double t);

// Tr(aⁿρ) over the truncated basis.
cplx moment_from_state(const FieldDensityMatrix& rho, int order);

// S_f = 1 − Tr ρ_F² from the double series over the truncation square.
double linear_entropy(const ModelParams& params, double t, int dim,
                      double tail_ceiling = kDefaultTailCeiling);

double linear_entropy_from_state(const FieldDensityMatrix& rho);

// linear_entropy over a time grid, split across `threads` workers. Results are
// independent of the thread count.
std::vector<double> linear_entropy_grid(const ModelParams& params, const std::vector<double>& times,
                                        int dim, unsigned threads = 1,
                                        double tail_ceiling = kDefaultTailCeiling);

}  // namespace tpjc
