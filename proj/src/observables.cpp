#include "antikz/observables.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "antikz/errors.hpp"
#include "antikz/summation.hpp"

namespace antikz {

namespace {

// Per-mode quantities evaluated at t = tau from the Bloch vector:
//   <H_k>         = hx*rx + hz*rz
//   p_k           = 1 - <G|rho|G> = (1 + r.h/|h|)/2
//   Var_k         = |h|^2 - <H_k>^2
struct ModeReduction {
    std::vector<double> p, q, var;
};

ModeReduction reduce_modes(std::span<const ModeResult> states, const ModelParams& params) {
    params.validate();
    const std::vector<double> ks = momenta(params.n_sites);
    if (states.size() != ks.size())
        throw SimulationError("observables: expected " + std::to_string(ks.size()) +
                              " mode states, got " + std::to_string(states.size()));
    ModeReduction out;
    out.p.resize(ks.size());
    out.q.resize(ks.size());
    out.var.resize(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (std::abs(states[i].k - ks[i]) > 1e-12)
            throw SimulationError("observables: mode set mismatch at index " +
                                  std::to_string(i));
        const ModeCoefficients c = coefficients(ks[i], params);
        const double hz = c.hz(params.tau);
        const double hx = c.hx(params.tau);
        const double eps = std::hypot(hz, hx);
        const Eigen::Vector3d r = states[i].state.bloch();
        const double energy = hx * r.x() + hz * r.z();
        out.p[i] = 0.5 * (1.0 + energy / eps);
        out.q[i] = energy + eps;
        out.var[i] = eps * eps - energy * energy;
        if (out.var[i] < -1e-12)
            throw SimulationError("energy_spread: negative variance at k = " +
                                  std::to_string(ks[i]));
        if (out.var[i] < 0.0) out.var[i] = 0.0;
    }
    return out;
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::MasterEquation: return "master-equation";
        case Method::Trajectory: return "trajectory";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

double excitation_density(std::span<const ModeResult> states, const ModelParams& params) {
    const ModeReduction m = reduce_modes(states, params);
    double n = 2.0 / params.n_sites * pairwise_sum(m.p);
    // Guard against roundoff just outside [0, 1].
    return std::min(1.0, std::max(0.0, n));
}

double residual_energy(std::span<const ModeResult> states, const ModelParams& params) {
    const ModeReduction m = reduce_modes(states, params);
    return pairwise_sum(m.q) / params.n_sites;
}

double energy_spread(std::span<const ModeResult> states, const ModelParams& params) {
    const ModeReduction m = reduce_modes(states, params);
    return std::sqrt(pairwise_sum(m.var)) / params.n_sites;
}

ObservableRecord make_record(std::span<const ModeResult> states, const ModelParams& params,
                             Method method) {
    return {params.tau, params.w2,
            excitation_density(states, params),
            residual_energy(states, params),
            energy_spread(states, params), method};
}

} // namespace antikz
