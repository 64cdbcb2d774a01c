#include "antikz/full_space.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "antikz/errors.hpp"
#include "antikz/summation.hpp"
#include "even_sector.hpp"

namespace antikz {

namespace {

using Cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;

void check_oracle_size(const ModelParams& params) {
    params.validate();
    if (params.n_sites > 10)
        throw std::invalid_argument("full_space_oracle: N must be <= 10");
}

double oracle_step(const IntegratorConfig& cfg, double h_norm, double max_rate) {
    if (cfg.dt > 0.0) return cfg.dt;
    double dt = std::min(2e-3, 1.0 / h_norm);
    if (max_rate > 0.0) dt = std::min(dt, 0.1 / max_rate);
    return dt;
}

// Pure-state path for W^2 = 0: RK4 on d psi/dt = -i H(t) psi.
MatC unitary_oracle(const detail::EvenSector& sector, const detail::SplitHamiltonian& ops,
                    const ModelParams& params, const IntegratorConfig& cfg) {
    Eigen::VectorXcd psi;
    {
        Eigen::SelfAdjointEigenSolver<MatR> es(ops.h0(params.protocol.g(0.0, params.tau)));
        psi = es.eigenvectors().col(0).cast<Cplx>();
    }
    const double lam = params.lambda;
    const double h_norm = lam * sector.n_sites * (1.0 + 2.0 * params.protocol.g_max_abs());
    const double h0 = oracle_step(cfg, h_norm, 0.0);
    const long steps = std::max(1L, static_cast<long>(std::ceil(params.tau / h0)));
    const double h = params.tau / static_cast<double>(steps);

    const Cplx mi(0.0, -1.0);
    auto rhs = [&](double t, const Eigen::VectorXcd& p) -> Eigen::VectorXcd {
        const double g = params.protocol.g(t, params.tau);
        return mi * (ops.h_const * p + g * (ops.v * p));
    };
    for (long i = 0; i < steps; ++i) {
        const double t = h * static_cast<double>(i);
        const Eigen::VectorXcd k1 = rhs(t, psi);
        const Eigen::VectorXcd k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = rhs(t + h, psi + h * k3);
        psi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    psi /= psi.norm();
    return psi * psi.adjoint();
}

// Density-matrix path in the eigenbasis of V, where the double commutator
// acts entrywise: rho_ij picks up -i g(t) (l_i - l_j) - (W^2/2)(l_i - l_j)^2.
MatC lindblad_oracle(const detail::EvenSector& sector, const detail::SplitHamiltonian& ops,
                     const ModelParams& params, const IntegratorConfig& cfg) {
    Eigen::SelfAdjointEigenSolver<MatR> v_eig(ops.v);
    const MatR& u = v_eig.eigenvectors();
    const Eigen::VectorXd& lam_v = v_eig.eigenvalues();
    const int dim = sector.dim;

    const MatC h_tilde = (u.transpose() * ops.h_const * u).cast<Cplx>();

    MatC rho;
    {
        Eigen::SelfAdjointEigenSolver<MatR> es(ops.h0(params.protocol.g(0.0, params.tau)));
        const Eigen::VectorXd psi = u.transpose() * es.eigenvectors().col(0);
        rho = (psi * psi.transpose()).cast<Cplx>();
    }

    // Per-entry linear coefficients of the diagonal part of the generator.
    MatC diag_gen_h(dim, dim); // multiplied by g(t)
    MatR diss(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double d = lam_v[i] - lam_v[j];
            diag_gen_h(i, j) = Cplx(0.0, -d);
            diss(i, j) = -0.5 * params.w2 * d * d;
        }

    const double spread = lam_v.maxCoeff() - lam_v.minCoeff();
    const double h_norm = ops.h_const.cwiseAbs().rowwise().sum().maxCoeff() +
                          params.protocol.g_max_abs() * std::max(std::abs(lam_v.maxCoeff()),
                                                                 std::abs(lam_v.minCoeff()));
    const double max_rate = 0.5 * params.w2 * spread * spread;
    const double h0 = oracle_step(cfg, h_norm, max_rate);
    const long steps = std::max(1L, static_cast<long>(std::ceil(params.tau / h0)));
    const double h = params.tau / static_cast<double>(steps);

    const Cplx mi(0.0, -1.0);
    MatC k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim);
    auto rhs = [&](double t, const MatC& r, MatC& out) {
        const double g = params.protocol.g(t, params.tau);
        out.noalias() = h_tilde * r;
        out.noalias() -= r * h_tilde;
        out *= mi;
        out.array() += (g * diag_gen_h.array() + diss.array()) * r.array();
    };

    const int renorm = cfg.renormalize_every > 0 ? cfg.renormalize_every : 100;
    for (long i = 0; i < steps; ++i) {
        const double t = h * static_cast<double>(i);
        rhs(t, rho, k1);
        tmp = rho + 0.5 * h * k1;
        rhs(t + 0.5 * h, tmp, k2);
        tmp = rho + 0.5 * h * k2;
        rhs(t + 0.5 * h, tmp, k3);
        tmp = rho + h * k3;
        rhs(t + h, tmp, k4);
        rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((i + 1) % renorm == 0) {
            rho = 0.5 * (rho + rho.adjoint()).eval();
            rho /= rho.trace().real();
        }
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    return u.cast<Cplx>() * rho * u.transpose().cast<Cplx>();
}

} // namespace

Eigen::MatrixXcd FullSpaceState::full_density() const {
    const detail::EvenSector sector = detail::EvenSector::build(n_sites);
    const int total = 1 << n_sites;
    MatC full = MatC::Zero(total, total);
    for (int i = 0; i < sector.dim; ++i)
        for (int j = 0; j < sector.dim; ++j)
            full(sector.states[static_cast<std::size_t>(i)],
                 sector.states[static_cast<std::size_t>(j)]) = rho_even(i, j);
    return full;
}

void FullSpaceState::validate(double positivity_floor) const {
    if ((rho_even - rho_even.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw SimulationError("FullSpaceState: not Hermitian");
    if (std::abs(rho_even.trace().real() - 1.0) > 1e-8)
        throw SimulationError("FullSpaceState: trace != 1");
    Eigen::SelfAdjointEigenSolver<MatC> es(rho_even, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < positivity_floor)
        throw SimulationError("FullSpaceState: negative eigenvalue below floor");
}

FullSpaceState full_space_oracle(const ModelParams& params, const IntegratorConfig& cfg) {
    check_oracle_size(params);
    const detail::EvenSector sector = detail::EvenSector::build(params.n_sites);
    const detail::SplitHamiltonian ops = detail::split_hamiltonian(sector, params);

    FullSpaceState out;
    out.n_sites = params.n_sites;
    out.rho_even = (params.w2 == 0.0) ? unitary_oracle(sector, ops, params, cfg)
                                      : lindblad_oracle(sector, ops, params, cfg);
    return out;
}

FullSpaceObservables full_space_observables(const FullSpaceState& state,
                                            const ModelParams& params) {
    check_oracle_size(params);
    if (state.n_sites != params.n_sites)
        throw std::invalid_argument("full_space_observables: chain size mismatch");
    const detail::EvenSector sector = detail::EvenSector::build(params.n_sites);
    const detail::SplitHamiltonian ops = detail::split_hamiltonian(sector, params);

    // n_W from the quadratic mode correlators.
    Eigen::MatrixXcd c_mat, f_mat;
    detail::fermion_correlators(sector, state.rho_even, c_mat, f_mat);
    const std::vector<double> ks = momenta(params.n_sites);
    std::vector<double> p(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const Eigen::Matrix2cd rho_k =
            detail::mode_density_from_correlators(c_mat, f_mat, ks[i]);
        const Eigen::Vector2cd g = ground_state(ks[i], params.tau, params);
        p[i] = 1.0 - (g.adjoint() * rho_k * g)(0, 0).real();
    }

    FullSpaceObservables obs;
    obs.n_w = 2.0 / params.n_sites * pairwise_sum(p);

    // Q and dE directly from the final spin Hamiltonian on the even sector.
    const MatR h_final = ops.h0(params.protocol.g(params.tau, params.tau));
    const MatC h_c = h_final.cast<Cplx>();
    const MatC h_rho = h_c * state.rho_even;
    const double e_mean = h_rho.trace().real();
    const double e2_mean = (h_c * h_rho).trace().real();
    Eigen::SelfAdjointEigenSolver<MatR> es(h_final, Eigen::EigenvaluesOnly);
    obs.q = (e_mean - es.eigenvalues().minCoeff()) / params.n_sites;
    obs.de = std::sqrt(std::max(0.0, e2_mean - e_mean * e_mean)) / params.n_sites;
    return obs;
}

} // namespace antikz
