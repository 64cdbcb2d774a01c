#pragma once

// Even spin-flip-parity sector of the periodic chain, in the product basis
// of sigma^x eigenstates. Bit j of a basis index is the fermion occupation
// n_j (sigma^x_j = 1 - 2 n_j), so the all-(+x) state is index 0. Both the
// Hamiltonian and the noise operator commute with the parity
// P = prod_n sigma^x_n, and every supported initial state is parity-even,
// so the dynamics never leaves this sector (dimension 2^(N-1)).

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "antikz/model.hpp"

namespace antikz::detail {

struct EvenSector {
    int n_sites = 0;
    int dim = 0;
    std::vector<std::uint32_t> states; // even-popcount bitstrings, ascending
    std::vector<int> index;            // bitstring -> sector index, -1 if odd

    static EvenSector build(int n_sites);
};

/// Diagonal of sum_n sigma^x_n: N - 2 popcount.
Eigen::VectorXd field_diag(const EvenSector& s);

/// sum_n sigma^z_n sigma^z_{n+1} with periodic closure: flips adjacent bit pairs.
Eigen::MatrixXd ising_flip(const EvenSector& s);

// The noisy Hamiltonian splits as H(t) = H0(t) + gamma(t) V with
// H0(t) = h_const + g(t) V and V = dH/dg, for both protocols:
//   annealing:  h_const = -Lambda X,  V = Lambda (X - Z)
//   field ramp: h_const = -Lambda Z,  V = -Lambda X
// where X = sum sigma^x and Z = sum sigma^z sigma^z.
struct SplitHamiltonian {
    Eigen::MatrixXd h_const;
    Eigen::MatrixXd v;

    Eigen::MatrixXd h0(double g) const { return h_const + g * v; }
};

SplitHamiltonian split_hamiltonian(const EvenSector& s, const ModelParams& params);

/// Fermion correlators of an even-sector density matrix through the
/// Jordan-Wigner map c_n = (prod_{j<n} sigma^x_j)(sigma^z_n - i sigma^y_n)/2:
/// C(m, n) = Tr(rho c_m^+ c_n) and F(m, n) = Tr(rho c_m c_n), sites 0-based.
void fermion_correlators(const EvenSector& s, const Eigen::MatrixXcd& rho_even,
                         Eigen::MatrixXcd& c_mat, Eigen::MatrixXcd& f_mat);

/// Reduced 2x2 density matrix of momentum mode k in the pseudospin basis,
/// assembled from the quadratic correlators.
Eigen::Matrix2cd mode_density_from_correlators(const Eigen::MatrixXcd& c_mat,
                                               const Eigen::MatrixXcd& f_mat, double k);

} // namespace antikz::detail
