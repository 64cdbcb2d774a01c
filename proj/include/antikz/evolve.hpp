#pragma once

#include <vector>

#include "antikz/model.hpp"

namespace antikz {

enum class StepMethod { FixedRk4, AdaptiveCashKarp };

// Integration controls for the per-mode master equation
//   d rho/dt = -i [hz sz + hx sx, rho] - (W^2/2) [V, [V, rho]].
//
// The mode equation is integrated in the Bloch parametrization (three real
// components, fixed unit trace), so the trace cannot drift and Hermiticity
// holds by construction. renormalize_every only matters for the full-space
// oracle, where the density matrix is rehermitized and trace-rescaled at
// that interval.
struct IntegratorConfig {
    StepMethod method = StepMethod::FixedRk4;
    double dt = 0.0;          // <= 0 selects default_dt(params)
    double tolerance = 1e-10; // adaptive: local error target per unit time
    int renormalize_every = 100;

    /// min(1e-2, 0.05/(W^2 * 16 Lambda^2), 0.05/Hmax) with Hmax the
    /// protocol-dependent bound on the mode energy (4*Lambda covers annealing).
    static double default_dt(const ModelParams& params);

    /// Resolved fixed step (dt, or the default when dt <= 0).
    double step_size(const ModelParams& params) const;

    /// Enforces dt <= 0.1 / max(||H||, W^2 ||V||^2) with the spectral bounds
    /// ||H|| <= 4 Lambda (annealing) and ||V||^2 <= 16 Lambda^2.
    void validate(const ModelParams& params) const;
};

/// Integrates one mode from t = 0 to t = tau. The returned state is
/// Hermitian with unit trace; a Bloch radius above 1 + 2e-9 (negative
/// eigenvalue below -1e-9) raises SimulationError.
ModeDensityMatrix integrate_mode(const ModeDensityMatrix& rho0,
                                 const ModeCoefficients& coeffs,
                                 const ModelParams& params,
                                 const IntegratorConfig& cfg);

struct ModeResult {
    double k = 0.0;
    ModeDensityMatrix state;
};

// Final states for every k in momenta(N), each mode starting from the ground
// state at t = 0 (the vacuum for the annealing protocol). The OpenMP variant
// writes each mode into its own slot, so it is bitwise identical to the
// serial reference for any thread count.
std::vector<ModeResult> evolve_all(const ModelParams& params, const IntegratorConfig& cfg);
std::vector<ModeResult> evolve_all_serial(const ModelParams& params, const IntegratorConfig& cfg);

} // namespace antikz
