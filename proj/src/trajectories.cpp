#include "antikz/trajectories.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "antikz/errors.hpp"
#include "antikz/philox.hpp"
#include "even_sector.hpp"

namespace antikz {

namespace {

constexpr int kBlock = 256; // trajectories per reduction block

// Full-space trajectories use a stream id no momentum can collide with
// (stream_of(k) is a finite double's bit pattern).
constexpr std::uint64_t kFullSpaceStream = ~0ull;

double trajectory_step(const ModelParams& params, const TrajectoryConfig& cfg) {
    if (cfg.dt > 0.0) return cfg.dt;
    const double lam = params.lambda;
    double dt = std::min(1e-3, 0.05 / (4.0 * lam));
    if (params.w2 > 0.0) dt = std::min(dt, 0.05 / (params.w2 * 16.0 * lam * lam));
    return dt;
}

} // namespace

void TrajectoryConfig::validate(const ModelParams& params) const {
    if (n_traj < 1) throw std::invalid_argument("trajectories.n: must be >= 1");
    const double lam = params.lambda;
    const double h = trajectory_step(params, *this);
    if (!(h > 0.0)) throw std::invalid_argument("trajectories.dt: must be > 0");
    if (params.w2 * 16.0 * lam * lam * h >= 0.1 || 4.0 * lam * h >= 0.1)
        throw std::invalid_argument("trajectories.dt: violates W^2*16*L^2*dt < 0.1 and "
                                    "4*L*dt < 0.1");
}

Eigen::Vector2cd sample_trajectory(double k, const ModelParams& params,
                                   const TrajectoryConfig& cfg, int traj_index) {
    using namespace std::complex_literals;
    params.validate();
    cfg.validate(params);
    const ModeCoefficients c = coefficients(k, params);
    Eigen::Vector2cd psi = ground_state(k, 0.0, params);

    const double h0 = trajectory_step(params, cfg);
    const long steps = std::max(1L, static_cast<long>(std::ceil(params.tau / h0)));
    const double h = params.tau / static_cast<double>(steps);
    const double w_sqh = std::sqrt(params.w2) * std::sqrt(h);
    const std::uint64_t stream = rng::stream_of(k);

    for (long i = 0; i < steps; ++i) {
        const double tm = (static_cast<double>(i) + 0.5) * h;
        double dgamma = 0.0;
        if (params.w2 > 0.0)
            dgamma = w_sqh * rng::gaussian(cfg.seed, stream,
                                           static_cast<std::uint32_t>(traj_index),
                                           static_cast<std::uint32_t>(i));
        // Exact exponential of the Hermitian generator a*sx + c*sz.
        const double a = c.hx(tm) * h + c.vx * dgamma;
        const double cz = c.hz(tm) * h + c.vz * dgamma;
        const double theta = std::hypot(a, cz);
        const double ct = std::cos(theta);
        const double snc = (theta < 1e-8) ? 1.0 - theta * theta / 6.0
                                          : std::sin(theta) / theta;
        const std::complex<double> p0 = ct * psi[0] - 1i * snc * (cz * psi[0] + a * psi[1]);
        const std::complex<double> p1 = ct * psi[1] - 1i * snc * (a * psi[0] - cz * psi[1]);
        psi[0] = p0;
        psi[1] = p1;
    }
    return psi;
}

namespace {

struct BlockSums {
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2d sumsq_re = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d sumsq_im = Eigen::Matrix2d::Zero();
};

AveragedState average_impl(double k, const ModelParams& params, const TrajectoryConfig& cfg,
                           bool parallel) {
    params.validate();
    cfg.validate(params);
    if (cfg.n_traj < 2)
        throw std::invalid_argument("noise_average: need n_traj >= 2");

    if (params.w2 == 0.0) {
        // Every realization is the same deterministic trajectory.
        AveragedState out;
        out.n_traj = cfg.n_traj;
        out.mean = ModeDensityMatrix::pure(sample_trajectory(k, params, cfg, 0));
        return out;
    }

    const int n_blocks = (cfg.n_traj + kBlock - 1) / kBlock;
    std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));

    std::string first_error;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int b = 0; b < n_blocks; ++b) {
        try {
            BlockSums& bs = blocks[static_cast<std::size_t>(b)];
            const int lo = b * kBlock;
            const int hi = std::min(cfg.n_traj, lo + kBlock);
            for (int m = lo; m < hi; ++m) {
                const Eigen::Vector2cd psi = sample_trajectory(k, params, cfg, m);
                const Eigen::Matrix2cd proj = psi * psi.adjoint();
                bs.sum += proj;
                bs.sumsq_re += proj.real().cwiseProduct(proj.real());
                bs.sumsq_im += proj.imag().cwiseProduct(proj.imag());
            }
        } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) throw SimulationError(first_error);

    // Deterministic combine in block order.
    BlockSums total;
    for (const BlockSums& bs : blocks) {
        total.sum += bs.sum;
        total.sumsq_re += bs.sumsq_re;
        total.sumsq_im += bs.sumsq_im;
    }

    const double m = static_cast<double>(cfg.n_traj);
    AveragedState out;
    out.n_traj = cfg.n_traj;
    out.mean.rho = total.sum / m;
    const Eigen::Matrix2d mean_re = out.mean.rho.real();
    const Eigen::Matrix2d mean_im = out.mean.rho.imag();
    // Unbiased per-entry variance; clamp the roundoff negatives at zero.
    const Eigen::Matrix2d var_re =
        ((total.sumsq_re / m - mean_re.cwiseProduct(mean_re)) * (m / (m - 1.0)))
            .cwiseMax(0.0);
    const Eigen::Matrix2d var_im =
        ((total.sumsq_im / m - mean_im.cwiseProduct(mean_im)) * (m / (m - 1.0)))
            .cwiseMax(0.0);
    out.stderr_re = (var_re / m).cwiseSqrt();
    out.stderr_im = (var_im / m).cwiseSqrt();
    return out;
}

} // namespace

AveragedState noise_average(double k, const ModelParams& params, const TrajectoryConfig& cfg) {
    return average_impl(k, params, cfg, true);
}

AveragedState noise_average_serial(double k, const ModelParams& params,
                                   const TrajectoryConfig& cfg) {
    return average_impl(k, params, cfg, false);
}

FullAveragedState noise_average_full(const ModelParams& params, const TrajectoryConfig& cfg) {
    params.validate();
    if (params.n_sites > 10)
        throw std::invalid_argument("noise_average_full: N must be <= 10");
    cfg.validate(params);
    if (cfg.n_traj < 2)
        throw std::invalid_argument("noise_average_full: need n_traj >= 2");

    const detail::EvenSector sector = detail::EvenSector::build(params.n_sites);
    const detail::SplitHamiltonian ops = detail::split_hamiltonian(sector, params);

    Eigen::VectorXd psi0;
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            ops.h0(params.protocol.g(0.0, params.tau)));
        psi0 = es.eigenvectors().col(0);
    }

    const double h0 = trajectory_step(params, cfg);
    const long steps = std::max(1L, static_cast<long>(std::ceil(params.tau / h0)));
    const double h = params.tau / static_cast<double>(steps);
    const double w_sqh = std::sqrt(params.w2) * std::sqrt(h);

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(sector.dim, sector.dim);
    Eigen::MatrixXd gen(sector.dim, sector.dim);
    for (int m = 0; m < cfg.n_traj; ++m) {
        Eigen::VectorXcd psi = psi0.cast<std::complex<double>>();
        for (long i = 0; i < steps; ++i) {
            const double tm = (static_cast<double>(i) + 0.5) * h;
            const double dgamma =
                (params.w2 > 0.0)
                    ? w_sqh * rng::gaussian(cfg.seed, kFullSpaceStream,
                                            static_cast<std::uint32_t>(m),
                                            static_cast<std::uint32_t>(i))
                    : 0.0;
            gen = ops.h0(params.protocol.g(tm, params.tau)) * h + ops.v * dgamma;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gen);
            const Eigen::VectorXcd phases =
                (std::complex<double>(0.0, -1.0) * es.eigenvalues().cast<std::complex<double>>())
                    .array()
                    .exp();
            psi = es.eigenvectors().cast<std::complex<double>>() *
                  (phases.asDiagonal() *
                   (es.eigenvectors().transpose().cast<std::complex<double>>() * psi));
        }
        acc += psi * psi.adjoint();
    }

    FullAveragedState out;
    out.n_traj = cfg.n_traj;
    out.mean_rho_even = acc / static_cast<double>(cfg.n_traj);
    return out;
}

} // namespace antikz
