#pragma once

#include <Eigen/Dense>

#include "antikz/evolve.hpp"
#include "antikz/model.hpp"

namespace antikz {

// Noise-averaged state of the whole chain, without the mode decoupling
// used by the per-mode solver. The density matrix lives on the even
// spin-flip-parity sector (dimension 2^(N-1)), which the dynamics never
// leaves; full_density() embeds it into the 2^N spin Hilbert space.
struct FullSpaceState {
    int n_sites = 0;
    Eigen::MatrixXcd rho_even;

    Eigen::MatrixXcd full_density() const;
    void validate(double positivity_floor = -1e-9) const;
};

// Integrates d rho/dt = -i [H0(t), rho] - (W^2/2) [V, [V, rho]] with the
// full spin operators on a periodic chain of 4 <= N <= 10 sites, starting
// from the ground state at t = 0 (all spins along +x for the annealing
// protocol). The dissipator is applied exactly in the eigenbasis of V,
// where the double commutator is entrywise; W^2 = 0 falls back to pure
// Schroedinger integration of the state vector.
FullSpaceState full_space_oracle(const ModelParams& params, const IntegratorConfig& cfg);

struct FullSpaceObservables {
    double n_w = 0.0;
    double q = 0.0;
    double de = 0.0;
};

/// Diagnostics of a full-space state: n_W and Q through the quadratic mode
/// correlators, dE from Tr[rho H^2] - Tr[rho H]^2 directly.
FullSpaceObservables full_space_observables(const FullSpaceState& state,
                                            const ModelParams& params);

} // namespace antikz
