#pragma once

// Brute-force reference implementations used only by the tests. Everything
// here works on explicit 2^n x 2^n matrices and shares no code with the
// kernels, the MPS engine, or the observable estimators.

#include <Eigen/Dense>

#include "tfim/lattice.hpp"
#include "tfim/model.hpp"
#include "tfim/state_vector.hpp"

namespace oracle {

/// Single-qubit operator `op` acting on qubit q of n (qubit q = bit n-1-q),
/// built as a Kronecker product of identities.
Eigen::MatrixXcd embed_single(const Eigen::Matrix2cd &op, int q, int n);

/// Full-register matrix of a gate, by explicit basis-state enumeration.
Eigen::MatrixXcd embed_gate(const tfim::Gate &gate, int n);

/// Ordered product of the embedded gates.
Eigen::MatrixXcd circuit_unitary(const tfim::Circuit &circuit, int n);

/// J sum_bonds Z_a Z_b + h sum_q X_q.
Eigen::MatrixXcd hamiltonian(const tfim::Grid &grid, const tfim::ModelParams &params);

/// exp(-i t H) for Hermitian H via its eigendecomposition.
Eigen::MatrixXcd propagator(const Eigen::MatrixXcd &h, double t);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd &m);

Eigen::VectorXcd to_vector(const tfim::StateVector &sv);

/// (1/n) sum_j <Z_j> and (1/n^2) sum_{j,k} <Z_j Z_k> from explicit
/// operators, normalized by <psi|psi>.
double z_tot(const Eigen::VectorXcd &psi, int n);
double z2_tot(const Eigen::VectorXcd &psi, int n);

/// Weight outside the chi largest Schmidt values of the bipartite state
/// theta (rows | columns), relative to the total, from the eigenvalues of
/// the reduced density matrix theta theta^dagger.
double schmidt_discarded_weight(const Eigen::MatrixXcd &theta, Eigen::Index chi);

/// Random complex matrix with i.i.d. normal entries.
Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed);

} // namespace oracle
