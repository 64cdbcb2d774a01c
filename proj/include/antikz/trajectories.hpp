#pragma once

#include <cstdint>

#include "antikz/model.hpp"

namespace antikz {

enum class TrajectoryScope { PerMode, FullSpace };

struct TrajectoryConfig {
    int n_traj = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    TrajectoryScope scope = TrajectoryScope::PerMode;

    /// Enforces W^2 * 16 Lambda^2 * dt < 0.1 and 4 Lambda * dt < 0.1.
    void validate(const ModelParams& params) const;
};

/// One noise realization of mode k: per-step unitaries
///   U_n = exp(-i [H_k(t_n) dt + V_k dGamma_n]),  dGamma_n = W sqrt(dt) xi_n,
/// with xi_n standard normal deviates from a counter-based generator keyed
/// by (seed, k, traj_index, n) and t_n the step midpoint. The exponential is
/// evaluated exactly, so the norm is preserved per step.
Eigen::Vector2cd sample_trajectory(double k, const ModelParams& params,
                                   const TrajectoryConfig& cfg, int traj_index);

struct AveragedState {
    ModeDensityMatrix mean;
    Eigen::Matrix2d stderr_re = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d stderr_im = Eigen::Matrix2d::Zero();
    int n_traj = 0;
};

// Mean of |psi_m><psi_m| over cfg.n_traj trajectories with entrywise
// standard errors. Trajectories are accumulated in fixed-size blocks that
// are combined in block order, so the parallel and serial variants agree
// bitwise for any thread count.
AveragedState noise_average(double k, const ModelParams& params, const TrajectoryConfig& cfg);
AveragedState noise_average_serial(double k, const ModelParams& params,
                                   const TrajectoryConfig& cfg);

// Full-space variant (N <= 10): the chain state evolves under per-step exact
// exponentials of H_0(t_n) dt + V dGamma_n in the even spin-flip-parity
// sector. Provides a stochastic cross-check of the full-space oracle.
struct FullAveragedState {
    Eigen::MatrixXcd mean_rho_even;
    int n_traj = 0;
};

FullAveragedState noise_average_full(const ModelParams& params, const TrajectoryConfig& cfg);

} // namespace antikz
