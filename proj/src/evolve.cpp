#include "antikz/evolve.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <string>

#include "antikz/errors.hpp"

namespace antikz {

namespace {

using Bloch = std::array<double, 3>;

// dr/dt = 2 h(t) x r + 2 W^2 [(v.r) v - |v|^2 r], h = (hx, 0, hz), v = (vx, 0, vz).
struct ModeRhs {
    const ModeCoefficients& c;
    double w2;
    double v2; // vx^2 + vz^2

    ModeRhs(const ModeCoefficients& coeffs, double w2_)
        : c(coeffs), w2(w2_), v2(coeffs.vx * coeffs.vx + coeffs.vz * coeffs.vz) {}

    Bloch operator()(double t, const Bloch& r) const {
        const double hz = c.hz(t);
        const double hx = c.hx(t);
        Bloch d{-2.0 * hz * r[1],
                2.0 * (hz * r[0] - hx * r[2]),
                2.0 * hx * r[1]};
        if (w2 > 0.0) {
            const double g = 2.0 * w2;
            const double vr = c.vx * r[0] + c.vz * r[2];
            d[0] += g * (vr * c.vx - v2 * r[0]);
            d[1] += g * (-v2 * r[1]);
            d[2] += g * (vr * c.vz - v2 * r[2]);
        }
        return d;
    }
};

inline Bloch axpy(const Bloch& r, double a, const Bloch& d) {
    return {r[0] + a * d[0], r[1] + a * d[1], r[2] + a * d[2]};
}

Bloch rk4_step(const ModeRhs& f, double t, double h, const Bloch& r) {
    const Bloch k1 = f(t, r);
    const Bloch k2 = f(t + 0.5 * h, axpy(r, 0.5 * h, k1));
    const Bloch k3 = f(t + 0.5 * h, axpy(r, 0.5 * h, k2));
    const Bloch k4 = f(t + h, axpy(r, h, k3));
    return {r[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            r[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            r[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])};
}

// Cash-Karp 5(4) embedded pair; returns the 5th-order solution and the
// embedded error estimate.
Bloch cash_karp_step(const ModeRhs& f, double t, double h, const Bloch& r, double& err) {
    static constexpr double b21 = 1.0 / 5.0;
    static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static constexpr double b41 = 3.0 / 10.0, b42 = -9.0 / 10.0, b43 = 6.0 / 5.0;
    static constexpr double b51 = -11.0 / 54.0, b52 = 5.0 / 2.0, b53 = -70.0 / 27.0,
                            b54 = 35.0 / 27.0;
    static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                            b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                            b65 = 253.0 / 4096.0;
    static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                            c6 = 512.0 / 1771.0;
    static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                            d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                            d6 = c6 - 1.0 / 4.0;

    const Bloch k1 = f(t, r);
    const Bloch k2 = f(t + 0.2 * h, axpy(r, h * b21, k1));
    Bloch tmp;
    for (int i = 0; i < 3; ++i) tmp[i] = r[i] + h * (b31 * k1[i] + b32 * k2[i]);
    const Bloch k3 = f(t + 0.3 * h, tmp);
    for (int i = 0; i < 3; ++i) tmp[i] = r[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
    const Bloch k4 = f(t + 0.6 * h, tmp);
    for (int i = 0; i < 3; ++i)
        tmp[i] = r[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
    const Bloch k5 = f(t + h, tmp);
    for (int i = 0; i < 3; ++i)
        tmp[i] = r[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] + b64 * k4[i] + b65 * k5[i]);
    const Bloch k6 = f(t + 0.875 * h, tmp);

    Bloch out;
    err = 0.0;
    for (int i = 0; i < 3; ++i) {
        out[i] = r[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
        const double e = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
        err = std::max(err, std::abs(e));
    }
    return out;
}

// Spectral bound on ||H_k(t)|| over the ramp, by protocol.
double mode_energy_bound(const ModelParams& params) {
    const double lam = params.lambda;
    if (params.protocol.kind == ProtocolKind::Annealing) return 4.0 * lam;
    return 2.0 * lam * (params.protocol.g_max_abs() + 1.0);
}

void check_positivity(const Bloch& r) {
    const double radius = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (radius > 1.0 + 2e-9)
        throw SimulationError("integrate_mode: negative eigenvalue below -1e-9 (Bloch radius " +
                              std::to_string(radius) + ")");
}

std::atomic<bool> g_cost_warned{false};

} // namespace

double IntegratorConfig::default_dt(const ModelParams& params) {
    const double lam = params.lambda;
    double dt = std::min(1e-2, 0.05 / mode_energy_bound(params));
    if (params.w2 > 0.0) dt = std::min(dt, 0.05 / (params.w2 * 16.0 * lam * lam));
    return dt;
}

double IntegratorConfig::step_size(const ModelParams& params) const {
    return dt > 0.0 ? dt : default_dt(params);
}

void IntegratorConfig::validate(const ModelParams& params) const {
    if (method != StepMethod::FixedRk4) return; // adaptive controls its own step
    const double lam = params.lambda;
    const double h = step_size(params);
    const double bound = 0.1 / std::max(std::max(4.0 * lam, mode_energy_bound(params)),
                                        params.w2 * 16.0 * lam * lam);
    if (h > bound)
        throw SimulationError("IntegratorConfig: step-size condition violated, dt = " +
                              std::to_string(h) + " exceeds " + std::to_string(bound));
}

ModeDensityMatrix integrate_mode(const ModeDensityMatrix& rho0,
                                 const ModeCoefficients& coeffs,
                                 const ModelParams& params,
                                 const IntegratorConfig& cfg) {
    cfg.validate(params);
    const ModeRhs f(coeffs, params.w2);
    Bloch r;
    {
        const Eigen::Vector3d b = rho0.bloch();
        r = {b.x(), b.y(), b.z()};
    }

    if (cfg.method == StepMethod::FixedRk4) {
        const double h0 = cfg.step_size(params);
        const long steps = std::max(1L, static_cast<long>(std::ceil(params.tau / h0)));
        if (steps > 10'000'000L && !g_cost_warned.exchange(true))
            std::fprintf(stderr, "antikz: warning: %ld integration steps for tau = %g\n",
                         steps, params.tau);
        const double h = params.tau / static_cast<double>(steps);
        for (long i = 0; i < steps; ++i)
            r = rk4_step(f, h * static_cast<double>(i), h, r);
    } else {
        const double hmax = 0.1 / std::max(std::max(4.0 * params.lambda, mode_energy_bound(params)),
                                           params.w2 * 16.0 * params.lambda * params.lambda);
        double h = std::min(cfg.step_size(params), hmax);
        double t = 0.0;
        while (t < params.tau) {
            h = std::min(h, params.tau - t);
            double err = 0.0;
            const Bloch trial = cash_karp_step(f, t, h, r, err);
            const double target = cfg.tolerance * h;
            if (err <= target || h <= 1e-12) {
                r = trial;
                t += h;
                const double grow = (err > 0.0) ? 0.9 * std::pow(target / err, 0.2) : 5.0;
                h = std::min(hmax, h * std::clamp(grow, 0.2, 5.0));
            } else {
                h *= std::max(0.2, 0.9 * std::pow(target / err, 0.25));
            }
        }
    }

    check_positivity(r);
    return ModeDensityMatrix::from_bloch({r[0], r[1], r[2]});
}

namespace {

std::vector<ModeResult> evolve_impl(const ModelParams& params, const IntegratorConfig& cfg,
                                    bool parallel) {
    params.validate();
    cfg.validate(params);
    const std::vector<double> ks = momenta(params.n_sites);
    std::vector<ModeResult> out(ks.size());

    std::string first_error;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ks.size()); ++i) {
        const double k = ks[static_cast<std::size_t>(i)];
        try {
            const ModeCoefficients c = coefficients(k, params);
            const ModeDensityMatrix rho0 =
                ModeDensityMatrix::pure(ground_state(k, 0.0, params));
            out[static_cast<std::size_t>(i)] = {k, integrate_mode(rho0, c, params, cfg)};
        } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty())
                first_error = "evolve_all: k = " + std::to_string(k) + ": " + e.what();
        }
    }
    if (!first_error.empty()) throw SimulationError(first_error);
    return out;
}

} // namespace

std::vector<ModeResult> evolve_all(const ModelParams& params, const IntegratorConfig& cfg) {
    return evolve_impl(params, cfg, true);
}

std::vector<ModeResult> evolve_all_serial(const ModelParams& params, const IntegratorConfig& cfg) {
    return evolve_impl(params, cfg, false);
}

} // namespace antikz
