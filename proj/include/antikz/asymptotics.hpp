#pragma once

namespace antikz {

// Closed-form two-level predictions for a linear crossing with adiabaticity
// parameter x = Delta^2/|v|, and their Brillouin-zone estimates. Used to
// validate the long-ramp behavior of the field-ramp protocol.

/// Landau-Zener excitation probability exp(-2 pi x). Requires x >= 0.
double landau_zener(double x);

/// Kayanuma excitation probability (1 + exp(-4 pi x))/2 for a crossing with
/// fast diagonal noise; saturates at 1/2. Requires x >= 0.
double kayanuma(double x);

/// Adiabaticity parameter of mode k under a field ramp of duration tau:
/// Delta^2/|v| = tau k^2.
double mode_adiabaticity(double k, double tau);

/// Continuum estimate of the excitation density at long ramp times:
/// 1/2 + 1/(4 pi sqrt(tau)).
double kayanuma_density(double tau);

/// Discrete Brillouin-zone sum (1/N) sum_{all k} P_K(tau k^2)
/// = (2/N) sum_{k>0} P_K, the lattice counterpart of kayanuma_density.
double kayanuma_density_discrete(int n_sites, double tau);

} // namespace antikz
