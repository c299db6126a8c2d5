#include "dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using cplx = std::complex<double>;
using Eigen::Index;
using Eigen::MatrixXcd;

MatrixXcd embed_single(const Eigen::Matrix2cd &op, int q, int n) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        const MatrixXcd factor = (k == q) ? MatrixXcd(op) : MatrixXcd::Identity(2, 2);
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

namespace {

// Each column of an embedded gate has at most four non-zeros.
Eigen::SparseMatrix<cplx> embed_gate_sparse(const tfim::Gate &gate, int n) {
    const MatrixXcd g = tfim::gate_matrix(gate);
    const Index dim = Index{1} << n;
    std::vector<Eigen::Triplet<cplx>> entries;
    const int bp = n - 1 - gate.targets[0];
    if (gate.arity() == 1) {
        for (Index col = 0; col < dim; ++col) {
            const int in = static_cast<int>((col >> bp) & 1);
            for (int o = 0; o < 2; ++o) {
                const Index row = (col & ~(Index{1} << bp)) | (Index{o} << bp);
                entries.emplace_back(row, col, g(o, in));
            }
        }
    } else {
        const int bq = n - 1 - gate.targets[1];
        for (Index col = 0; col < dim; ++col) {
            const int in = static_cast<int>(((col >> bp) & 1) * 2 + ((col >> bq) & 1));
            for (int o = 0; o < 4; ++o) {
                Index row = col & ~(Index{1} << bp) & ~(Index{1} << bq);
                row |= Index{o >> 1} << bp;
                row |= Index{o & 1} << bq;
                entries.emplace_back(row, col, g(o, in));
            }
        }
    }
    Eigen::SparseMatrix<cplx> m(dim, dim);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

} // namespace

MatrixXcd embed_gate(const tfim::Gate &gate, int n) {
    return MatrixXcd(embed_gate_sparse(gate, n));
}

MatrixXcd circuit_unitary(const tfim::Circuit &circuit, int n) {
    const Index dim = Index{1} << n;
    MatrixXcd u = MatrixXcd::Identity(dim, dim);
    for (const auto &gate : circuit.gates) {
        u = (embed_gate_sparse(gate, n) * u).eval();
    }
    return u;
}

MatrixXcd hamiltonian(const tfim::Grid &grid, const tfim::ModelParams &params) {
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    const int n = grid.n();
    const Index dim = Index{1} << n;
    MatrixXcd h = MatrixXcd::Zero(dim, dim);
    for (const auto &bond : grid.bonds()) {
        h += params.j_coupling * embed_single(z, bond.a, n) * embed_single(z, bond.b, n);
    }
    for (int q = 0; q < n; ++q) {
        h += params.h_field * embed_single(x, q, n);
    }
    return h;
}

MatrixXcd propagator(const MatrixXcd &h, double t) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double spectral_norm(const MatrixXcd &m) {
    // Largest eigenvalue of the Gram matrix.
    const MatrixXcd gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

Eigen::VectorXcd to_vector(const tfim::StateVector &sv) {
    Eigen::VectorXcd v(static_cast<Index>(sv.size()));
    for (std::size_t i = 0; i < sv.size(); ++i) {
        v(static_cast<Index>(i)) = sv[i];
    }
    return v;
}

namespace {

// Diagonal of Z_q in the computational basis.
Eigen::VectorXd z_diagonal(int q, int n) {
    const Index dim = Index{1} << n;
    Eigen::VectorXd d(dim);
    for (Index b = 0; b < dim; ++b) {
        d(b) = ((b >> (n - 1 - q)) & 1) ? -1.0 : 1.0;
    }
    return d;
}

} // namespace

double z_tot(const Eigen::VectorXcd &psi, int n) {
    const Eigen::VectorXd pop = psi.cwiseAbs2();
    double sum = 0.0;
    for (int q = 0; q < n; ++q) {
        sum += pop.dot(z_diagonal(q, n));
    }
    return sum / n / pop.sum();
}

double z2_tot(const Eigen::VectorXcd &psi, int n) {
    const Eigen::VectorXd pop = psi.cwiseAbs2();
    std::vector<Eigen::VectorXd> z;
    for (int q = 0; q < n; ++q) {
        z.push_back(z_diagonal(q, n));
    }
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            sum += pop.dot(z[j].cwiseProduct(z[k]));
        }
    }
    return sum / (double(n) * n) / pop.sum();
}

double schmidt_discarded_weight(const MatrixXcd &theta, Index chi) {
    const MatrixXcd rho = theta * theta.adjoint();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho);
    std::vector<double> w(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(w.begin(), w.end(), std::greater<>());
    double total = 0.0;
    double discarded = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double v = std::max(w[i], 0.0);
        total += v;
        if (static_cast<Index>(i) >= chi) {
            discarded += v;
        }
    }
    return discarded / total;
}

MatrixXcd random_matrix(Index rows, Index cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    MatrixXcd m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            m(i, j) = cplx(dist(rng), dist(rng));
        }
    }
    return m;
}

} // namespace oracle
