#pragma once

// Invariant-subspace spectrum of the two-photon Stark-shifted Hamiltonian and its
// dispersive limit.
//
// Sign convention: the detuning is δ = ω₀ − 2ω, so the |g,n+2⟩ energy reads
// ωn + ω₀/2 − δ + β₁(n+2). With this convention the exact eigenvalues, their
// dispersive expansion, Ω = β₁β₂/(δ−β₂) and the effective Hamiltonian agree.

#include <vector>

#include "tpjc/model.hpp"

namespace tpjc {

enum class AtomLevel { Excited, Ground };

inline constexpr double kDefaultDispersiveThreshold = 0.1;

// 2×2 block on span{|e,n⟩, |g,n+2⟩}.
struct BlockHamiltonian {
    int n = 0;
    double h11 = 0.0;
    double h22 = 0.0;
    double h12 = 0.0;  // λ√((n+1)(n+2)), symmetric

    double trace() const { return h11 + h22; }
    double determinant() const { return h11 * h22 - h12 * h12; }
};

// E_plus is the root that connects to |e,n⟩ as λ → 0.
struct EigenPair {
    double plus = 0.0;
    double minus = 0.0;
};

struct DispersiveReport {
    struct Ratios {
        double excited;  // β₁(n+2)/|δ−β₂|
        double ground;   // β₂(n+1)/|δ−β₂|
    };
    int n_max = 0;
    std::vector<Ratios> ratios;
    double threshold = kDefaultDispersiveThreshold;
    bool valid = false;
};

BlockHamiltonian block_hamiltonian(const ModelParams& params, int n);

// Closed-form roots of the block, with the branch assignment above.
EigenPair exact_eigenvalues(const ModelParams& params, int n);

DispersiveReport dispersive_report(const ModelParams& params, int n_max,
                                   double threshold = kDefaultDispersiveThreshold);

// Second-order energies using the stored Ω. Throws DispersiveError unless
// dispersive_report(params, n, threshold).valid.
EigenPair dispersive_eigenvalues(const ModelParams& params, int n,
                                 double threshold = kDefaultDispersiveThreshold);

// ⟨atom, n| H_eff |atom, n⟩.
double effective_diagonal(const ModelParams& params, int n, AtomLevel level);

}  // namespace tpjc
