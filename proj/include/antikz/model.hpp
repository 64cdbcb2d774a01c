#pragma once

#include <Eigen/Dense>
#include <vector>

namespace antikz {

enum class ProtocolKind { Annealing, FieldRamp };

// Driving protocol for the control field g(t).
//
// Annealing: g0(t) = t/tau ramps 0 -> 1, interpolating between a pure
// transverse field and a pure Ising coupling; the critical point sits at
// g_c = 1/2. FieldRamp: the transverse field runs linearly from g_start to
// g_end while the Ising coupling stays at 1 (critical point at g = 1).
struct Protocol {
    ProtocolKind kind = ProtocolKind::Annealing;
    double g_start = 2.0; // FieldRamp only
    double g_end = 0.0;   // FieldRamp only

    static Protocol annealing() { return {ProtocolKind::Annealing, 0.0, 1.0}; }
    static Protocol field_ramp(double g_start = 2.0, double g_end = 0.0) {
        return {ProtocolKind::FieldRamp, g_start, g_end};
    }

    /// Control field at time t for a ramp of duration tau.
    double g(double t, double tau) const;

    /// Largest |g| visited over the ramp.
    double g_max_abs() const;

    const char* name() const;
};

struct ModelParams {
    int n_sites = 0;      // N, positive even integer >= 4
    double lambda = 1.0;  // energy scale
    double tau = 0.0;     // ramp time, > 0
    double w2 = 0.0;      // noise strength W^2 (units of time), >= 0
    Protocol protocol{};

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Positive momenta of the antiperiodic (even-parity) sector:
/// k = (2m-1)*pi/N for m = 1..N/2, strictly increasing, all in (0, pi).
std::vector<double> momenta(int n_sites);

// Time-dependent coefficients of one momentum mode,
//   H_k(t) = hz(t) sigma_z + hx(t) sigma_x,   V_k = vz sigma_z + vx sigma_x,
// in the pseudospin basis {|up>_k = c_k^+ c_{-k}^+ |0>, |down>_k = |0>}.
// For every supported protocol hz and hx are affine in t, so the struct
// stores value/rate pairs; a frozen-coefficient instance has zero rates.
struct ModeCoefficients {
    double k = 0.0;
    double hz0 = 0.0, hz_rate = 0.0;
    double hx0 = 0.0, hx_rate = 0.0;
    double vz = 0.0, vx = 0.0;

    double hz(double t) const { return hz0 + hz_rate * t; }
    double hx(double t) const { return hx0 + hx_rate * t; }

    static ModeCoefficients frozen(double hz, double hx, double vz, double vx) {
        return {0.0, hz, 0.0, hx, 0.0, vz, vx};
    }
};

/// Mode coefficients for momentum k under the given protocol. Requires k in (0, pi).
ModeCoefficients coefficients(double k, const ModelParams& params);

/// Normalized ground state of hz*sigma_z + hx*sigma_x (eigenvalue -sqrt(hz^2+hx^2)).
/// Phase convention: first nonzero component real and positive.
/// Throws SimulationError when hz = hx = 0 (gap closed exactly).
Eigen::Vector2cd ground_state_of(double hz, double hx);

/// Ground state of H_k(t).
Eigen::Vector2cd ground_state(double k, double t, const ModelParams& params);

// 2x2 density matrix of one momentum mode in the pseudospin basis.
struct ModeDensityMatrix {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();

    static ModeDensityMatrix pure(const Eigen::Vector2cd& psi);
    static ModeDensityMatrix from_bloch(const Eigen::Vector3d& r);

    /// Bloch vector (x, y, z) with rho = (I + r . sigma)/2.
    Eigen::Vector3d bloch() const;

    double purity() const; // Tr(rho^2)
    double min_eigenvalue() const;

    /// Checks Hermiticity, unit trace and positivity (eigenvalues >= floor).
    void validate(double positivity_floor = -1e-9) const;
};

/// Initial state of a mode: the vacuum projector diag(0, 1), i.e. the
/// ground state of the g = 0 annealing Hamiltonian.
ModeDensityMatrix initial_state(double k);

} // namespace antikz
