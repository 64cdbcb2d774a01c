#pragma once

#include <span>

#include "antikz/evolve.hpp"
#include "antikz/model.hpp"

namespace antikz {

enum class Method { MasterEquation, Trajectory, Oracle };

const char* method_name(Method m);

// One row of simulation output: the three diagnostics of the final state.
struct ObservableRecord {
    double tau = 0.0;
    double w2 = 0.0;
    double n_w = 0.0; // density of excitations, in [0, 1]
    double q = 0.0;   // residual energy per site
    double de = 0.0;  // energy spread per site
    Method method = Method::MasterEquation;
};

// All three reductions expect one state per k in momenta(N), evaluated at
// t = tau, and use pairwise summation so results do not depend on how the
// mode list was produced.

/// n_W = (2/N) sum_{k>0} [1 - <G_k(tau)| rho_k |G_k(tau)>].
double excitation_density(std::span<const ModeResult> states, const ModelParams& params);

/// Q = (1/N) sum_{k>0} { Tr[rho_k H_k(tau)] + sqrt(hz^2 + hx^2) }.
double residual_energy(std::span<const ModeResult> states, const ModelParams& params);

/// dE = sqrt( sum_{k>0} Var_k ) / N, Var_k = Tr[rho_k H_k^2] - Tr[rho_k H_k]^2.
double energy_spread(std::span<const ModeResult> states, const ModelParams& params);

ObservableRecord make_record(std::span<const ModeResult> states, const ModelParams& params,
                             Method method);

} // namespace antikz
