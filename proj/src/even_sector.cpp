#include "even_sector.hpp"

#include <bit>
#include <complex>
#include <stdexcept>

namespace antikz::detail {

namespace {

inline int jw_sign(std::uint32_t state, int site) {
    // Parity of the occupied sites below `site` (the Jordan-Wigner string).
    const std::uint32_t below = state & ((1u << site) - 1u);
    return (std::popcount(below) & 1) ? -1 : 1;
}

} // namespace

EvenSector EvenSector::build(int n_sites) {
    if (n_sites < 2 || n_sites > 20)
        throw std::invalid_argument("EvenSector: unsupported chain size");
    EvenSector s;
    s.n_sites = n_sites;
    const std::uint32_t total = 1u << n_sites;
    s.index.assign(total, -1);
    s.states.reserve(total / 2);
    for (std::uint32_t b = 0; b < total; ++b) {
        if ((std::popcount(b) & 1) == 0) {
            s.index[b] = static_cast<int>(s.states.size());
            s.states.push_back(b);
        }
    }
    s.dim = static_cast<int>(s.states.size());
    return s;
}

Eigen::VectorXd field_diag(const EvenSector& s) {
    Eigen::VectorXd d(s.dim);
    for (int i = 0; i < s.dim; ++i)
        d[i] = s.n_sites - 2 * std::popcount(s.states[static_cast<std::size_t>(i)]);
    return d;
}

Eigen::MatrixXd ising_flip(const EvenSector& s) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(s.dim, s.dim);
    for (int i = 0; i < s.dim; ++i) {
        const std::uint32_t b = s.states[static_cast<std::size_t>(i)];
        for (int n = 0; n < s.n_sites; ++n) {
            const std::uint32_t mask = (1u << n) | (1u << ((n + 1) % s.n_sites));
            const int j = s.index[b ^ mask];
            f(j, i) += 1.0;
        }
    }
    return f;
}

SplitHamiltonian split_hamiltonian(const EvenSector& s, const ModelParams& params) {
    const double lam = params.lambda;
    const Eigen::MatrixXd x = field_diag(s).asDiagonal();
    const Eigen::MatrixXd z = ising_flip(s);
    SplitHamiltonian sh;
    if (params.protocol.kind == ProtocolKind::Annealing) {
        sh.h_const = -lam * x;
        sh.v = lam * (x - z);
    } else {
        sh.h_const = -lam * z;
        sh.v = -lam * x;
    }
    return sh;
}

void fermion_correlators(const EvenSector& s, const Eigen::MatrixXcd& rho_even,
                         Eigen::MatrixXcd& c_mat, Eigen::MatrixXcd& f_mat) {
    const int n = s.n_sites;
    c_mat.setZero(n, n);
    f_mat.setZero(n, n);
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) {
            std::complex<double> c_acc = 0.0, f_acc = 0.0;
            for (int i = 0; i < s.dim; ++i) {
                const std::uint32_t e = s.states[static_cast<std::size_t>(i)];
                if (!(e & (1u << nn))) continue;
                const std::uint32_t o = e ^ (1u << nn); // after c_n
                const int sn = jw_sign(e, nn);
                // c_m^+ c_n: needs site m empty in the intermediate state.
                if (!(o & (1u << m))) {
                    const int j = s.index[o ^ (1u << m)];
                    c_acc += static_cast<double>(sn * jw_sign(o, m)) * rho_even(i, j);
                }
                // c_m c_n: needs site m occupied in the intermediate state.
                if (o & (1u << m)) {
                    const int j = s.index[o ^ (1u << m)];
                    f_acc += static_cast<double>(sn * jw_sign(o, m)) * rho_even(i, j);
                }
            }
            c_mat(m, nn) = c_acc;
            f_mat(m, nn) = f_acc;
        }
    }
}

Eigen::Matrix2cd mode_density_from_correlators(const Eigen::MatrixXcd& c_mat,
                                               const Eigen::MatrixXcd& f_mat, double k) {
    using namespace std::complex_literals;
    const int n = static_cast<int>(c_mat.rows());
    Eigen::VectorXcd w(n);
    for (int m = 0; m < n; ++m) w[m] = std::exp(std::complex<double>(0.0, -k * m));

    // <c_k^+ c_k> = w^+ C w / N (and k -> -k with w conjugated);
    // <c_{-k} c_k> = i w^+ F w / N, the i from the e^{-i pi/4} transform phase.
    const std::complex<double> n_k = (w.adjoint() * c_mat * w)(0, 0);
    const std::complex<double> n_mk = (w.transpose() * c_mat * w.conjugate())(0, 0);
    const std::complex<double> b_k = 1i * (w.adjoint() * f_mat * w)(0, 0);

    // On even pair-parity support both occupations coincide; average them.
    const double occ = 0.5 * (n_k.real() + n_mk.real()) / static_cast<double>(n);
    Eigen::Matrix2cd rho;
    rho(0, 0) = occ;
    rho(1, 1) = 1.0 - occ;
    rho(0, 1) = b_k / static_cast<double>(n);
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

} // namespace antikz::detail
