#include "antikz/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "antikz/errors.hpp"

namespace antikz {

namespace {
constexpr double kPi = std::numbers::pi;
}

double Protocol::g(double t, double tau) const {
    switch (kind) {
        case ProtocolKind::Annealing:
            return t / tau;
        case ProtocolKind::FieldRamp:
            return g_start + (g_end - g_start) * (t / tau);
    }
    return 0.0;
}

double Protocol::g_max_abs() const {
    if (kind == ProtocolKind::Annealing) return 1.0;
    return std::max(std::abs(g_start), std::abs(g_end));
}

const char* Protocol::name() const {
    return kind == ProtocolKind::Annealing ? "annealing" : "field-ramp";
}

void ModelParams::validate() const {
    if (n_sites < 4 || n_sites % 2 != 0)
        throw std::invalid_argument("model.n: must be an even integer >= 4, got " +
                                    std::to_string(n_sites));
    if (!(lambda > 0.0))
        throw std::invalid_argument("model.lambda: must be > 0");
    if (!(tau > 0.0))
        throw std::invalid_argument("model.tau: must be > 0");
    if (!(w2 >= 0.0))
        throw std::invalid_argument("model.w2: must be >= 0");
}

std::vector<double> momenta(int n_sites) {
    if (n_sites < 4 || n_sites % 2 != 0)
        throw std::invalid_argument("momenta: N must be an even integer >= 4, got " +
                                    std::to_string(n_sites));
    std::vector<double> ks(static_cast<std::size_t>(n_sites / 2));
    for (int m = 1; m <= n_sites / 2; ++m)
        ks[static_cast<std::size_t>(m - 1)] = (2.0 * m - 1.0) * kPi / n_sites;
    return ks;
}

ModeCoefficients coefficients(double k, const ModelParams& params) {
    if (!(k > 0.0 && k < kPi))
        throw std::invalid_argument("coefficients: k must lie in (0, pi)");
    const double lam = params.lambda;
    const double tau = params.tau;
    const double ck = std::cos(k);
    const double sk = std::sin(k);

    ModeCoefficients c;
    c.k = k;
    switch (params.protocol.kind) {
        case ProtocolKind::Annealing:
            // hz = 2L[1 - g0(1 + cos k)], hx = 2L g0 sin k, with g0 = t/tau.
            c.hz0 = 2.0 * lam;
            c.hz_rate = -2.0 * lam * (1.0 + ck) / tau;
            c.hx0 = 0.0;
            c.hx_rate = 2.0 * lam * sk / tau;
            c.vz = -2.0 * lam * (1.0 + ck);
            c.vx = 2.0 * lam * sk;
            break;
        case ProtocolKind::FieldRamp: {
            // hz = 2L[g(t) - cos k], hx = 2L sin k; noise enters the field only.
            const double g0 = params.protocol.g_start;
            const double rate = (params.protocol.g_end - g0) / tau;
            c.hz0 = 2.0 * lam * (g0 - ck);
            c.hz_rate = 2.0 * lam * rate;
            c.hx0 = 2.0 * lam * sk;
            c.hx_rate = 0.0;
            c.vz = 2.0 * lam;
            c.vx = 0.0;
            break;
        }
    }
    return c;
}

Eigen::Vector2cd ground_state_of(double hz, double hx) {
    const double eps = std::hypot(hz, hx);
    if (eps == 0.0)
        throw SimulationError("ground_state: hz = hx = 0, gap closed exactly");
    // Eigenvector of [[hz, hx], [hx, -hz]] with eigenvalue -eps, picking the
    // numerically stable branch.
    double v0, v1;
    if (hz > 0.0) {
        v0 = -hx;
        v1 = hz + eps;
    } else {
        v0 = eps - hz;
        v1 = -hx;
    }
    const double norm = std::hypot(v0, v1);
    v0 /= norm;
    v1 /= norm;
    // First nonzero component real and positive.
    const double lead = (v0 != 0.0) ? v0 : v1;
    if (lead < 0.0) {
        v0 = -v0;
        v1 = -v1;
    }
    return {std::complex<double>(v0, 0.0), std::complex<double>(v1, 0.0)};
}

Eigen::Vector2cd ground_state(double k, double t, const ModelParams& params) {
    const ModeCoefficients c = coefficients(k, params);
    return ground_state_of(c.hz(t), c.hx(t));
}

ModeDensityMatrix ModeDensityMatrix::pure(const Eigen::Vector2cd& psi) {
    ModeDensityMatrix m;
    m.rho = psi * psi.adjoint();
    return m;
}

ModeDensityMatrix ModeDensityMatrix::from_bloch(const Eigen::Vector3d& r) {
    using namespace std::complex_literals;
    ModeDensityMatrix m;
    m.rho(0, 0) = 0.5 * (1.0 + r.z());
    m.rho(1, 1) = 0.5 * (1.0 - r.z());
    m.rho(0, 1) = 0.5 * (r.x() - 1i * r.y());
    m.rho(1, 0) = 0.5 * (r.x() + 1i * r.y());
    return m;
}

Eigen::Vector3d ModeDensityMatrix::bloch() const {
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
            (rho(0, 0) - rho(1, 1)).real()};
}

double ModeDensityMatrix::purity() const { return (rho * rho).trace().real(); }

double ModeDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void ModeDensityMatrix::validate(double positivity_floor) const {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw SimulationError("ModeDensityMatrix: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-12)
        throw SimulationError("ModeDensityMatrix: trace != 1");
    if (min_eigenvalue() < positivity_floor)
        throw SimulationError("ModeDensityMatrix: negative eigenvalue below floor");
}

ModeDensityMatrix initial_state(double /*k*/) {
    ModeDensityMatrix m;
    m.rho(1, 1) = 1.0;
    return m;
}

} // namespace antikz
