#pragma once

#include <functional>
#include <span>
#include <vector>

#include "antikz/evolve.hpp"
#include "antikz/model.hpp"
#include "antikz/observables.hpp"

namespace antikz {

// Critical exponents of the driven transition. For the transverse-field
// Ising chain d = nu = z = 1, hence beta = 1/2.
struct KzmTheory {
    double d = 1.0, nu = 1.0, z = 1.0;
    double beta() const { return d * nu / (1.0 + z * nu); }
};

struct FitResult {
    double prefactor = 0.0;
    double exponent = 0.0;
    double prefactor_err = 0.0;
    double exponent_err = 0.0;
    double r2 = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares of y against x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Least-squares line in (ln x, ln y): y = prefactor * x^exponent, with
/// standard errors and r^2. Requires >= 3 strictly positive points.
FitResult fit_power_law(std::span<const double> x, std::span<const double> y);

/// Log-spaced grid with n points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

/// Default noise-strength grid for sweeps: nine half-decade steps over
/// [1e-5, 1e-3].
std::vector<double> default_w2_grid();

// Sweep description: ramp-time grid, noise grid, and the shared base
// parameters / integrator settings each grid point is run with.
struct SweepSpec {
    std::vector<double> tau_grid;
    std::vector<double> w2_grid;
    ModelParams base;
    IntegratorConfig integrator;

    void validate() const; // grids nonempty and strictly increasing
};

struct HeatingRate {
    double rate = 0.0;     // slope of the zero-intercept fit of dn_W vs tau
    double residual = 0.0; // rms misfit relative to the rms of dn_W
};

/// Fits dn_W = n_W - n_0 ~ r*tau over the fast-ramp window W^2 tau < 1.
/// `noisy` and `baseline` must share the same tau grid; the baseline rows
/// carry W^2 = 0. Throws SimulationError when the window is empty.
HeatingRate heating_rate(std::span<const ObservableRecord> noisy,
                         std::span<const ObservableRecord> baseline);

struct TauOptimum {
    double tau_opt = 0.0;
    double n_min = 0.0;
};

/// Minimizes n_W(tau) at fixed w2: coarse scan of search.tau_grid followed
/// by golden-section refinement between the bracketing neighbors, to a
/// relative tau tolerance of 1e-2. Throws SimulationError when the grid does
/// not bracket an interior minimum.
TauOptimum find_tau_opt(double w2, const SweepSpec& search);

/// Same search driven by an arbitrary objective; find_tau_opt uses the
/// simulated n_W(tau). Exposed so the optimizer can be validated on
/// closed-form models.
TauOptimum minimize_on_grid(const std::function<double(double)>& f,
                            std::span<const double> tau_grid);

struct TauOptScaling {
    FitResult fit; // tau_opt = a * (W^2)^b
    std::vector<double> w2;
    std::vector<TauOptimum> optima;
};

/// Power-law fit of tau_opt against W^2. Requires >= 4 noise strengths
/// spanning at least 1.5 decades.
TauOptScaling fit_tau_opt_scaling(std::span<const double> w2_grid, const SweepSpec& base);

/// Fit path of fit_tau_opt_scaling with an injected optimizer, for tests.
TauOptScaling fit_tau_opt_scaling_with(std::span<const double> w2_grid,
                                       const std::function<TauOptimum(double)>& optimum_of);

/// Quench time of the linearized crossing: tau_Q = tau / 4.
double quench_time_map(double tau);

} // namespace antikz
