#pragma once

// Brute-force reference: fixed-step RK4 integration of the interaction-picture
// master equation on the truncated atom⊗field space
//
//   dρ/dt = −i[H_int, ρ] + κ(2aρa† − a†aρ − ρa†a),
//   H_int = a†a(β₂|e⟩⟨e| + β₁|g⟩⟨g|) + Ω[(a†a+1)(a†a+2)|e⟩⟨e| − a†a(a†a−1)|g⟩⟨g|].
//
// Nothing here uses the closed-form kernels.

#include <vector>

#include "tpjc/model.hpp"

namespace tpjc::oracle {

// Basis ordering: |e,n⟩ at index n, |g,n⟩ at index dim_field + n.
struct JointState {
    int dim_field = 0;
    CMatrix rho;
    double t = 0.0;

    int size() const { return 2 * dim_field; }
};

struct IntegratorConfig {
    double step = 1e-3;
    // Re-run with half the step and require agreement to `halving_tolerance`.
    bool check_convergence = false;
    double halving_tolerance = 1e-8;
};

struct Trajectory {
    std::vector<JointState> samples;
    double max_trace_drift = 0.0;
    long steps = 0;
};

// Guard levels added on top of the closed-form truncation.
inline constexpr int kGuardLevels = 2;

class MasterEquation {
public:
    MasterEquation(const ModelParams& params, int dim_field);

    int dim_field() const { return dim_field_; }
    // Diagonal of H_int in the joint basis.
    const Eigen::VectorXd& hamiltonian_diagonal() const { return energies_; }

    CMatrix apply(const CMatrix& rho) const;

private:
    int dim_field_;
    double kappa_;
    Eigen::VectorXd energies_;
    CMatrix rates_;           // −i(E_i − E_j) − κ(n_i + n_j)
    Eigen::MatrixXd feed_;    // 2κ√((m+1)(n+1)) on a (d−1)² field block
};

// (|e⟩ + |g⟩)/√2 ⊗ |α⟩, truncated to dim_field levels.
JointState initial_joint_state(const ModelParams& params, int dim_field,
                               double tail_ceiling = kDefaultTailCeiling);

// Right-hand side of the master equation. Throws ParameterError on a size mismatch.
CMatrix generator_apply(const ModelParams& params, const JointState& rho);

JointState propagate(const ModelParams& params, const JointState& initial, double t_end,
                     const IntegratorConfig& config);

// One integration pass that records the state at each of `times` (ascending, ≥ initial.t).
// With check_convergence the whole pass is repeated at half the step.
Trajectory propagate_trajectory(const ModelParams& params, const JointState& initial,
                                const std::vector<double>& times, const IntegratorConfig& config);

FieldDensityMatrix reduce_field(const JointState& state);

// Exact lossless evolution; H_int is diagonal in {|i,n⟩} so only phases move.
FieldDensityMatrix unitary_reference(const ModelParams& params, double t, int dim,
                                     double tail_ceiling = kDefaultTailCeiling);

// Largest |entry| of the ge/eg atomic coherence blocks.
double coherence_block_norm(const JointState& state);

double min_eigenvalue(const JointState& state);

}  // namespace tpjc::oracle
