#include "tfim/observables.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace tfim {

namespace {

using Eigen::MatrixXcd;

/// Summed Z of a k-qubit block for physical index p.
double block_magnetization(Index p, int k) {
    return k - 2.0 * std::popcount(static_cast<std::uint64_t>(p));
}

/// sum_p w(p) A_p^dag env A_p
template <typename Weight>
MatrixXcd transfer(const Tensor3 &a, const MatrixXcd &env, Weight weight) {
    MatrixXcd out = MatrixXcd::Zero(a.right(), a.right());
    MatrixXcd tmp;
    for (Index p = 0; p < a.phys(); ++p) {
        const double w = weight(p);
        if (w == 0.0) {
            continue;
        }
        tmp.noalias() = env * a.slice(p);
        out.noalias() += w * (a.slice(p).adjoint() * tmp);
    }
    return out;
}

struct Environments {
    std::vector<MatrixXcd> left;  // left[a]: sites [0, a) contracted
    std::vector<MatrixXcd> right; // right[a]: sites [a, S) contracted
};

Environments environments(const BlockedMps &mps) {
    const int s = mps.num_sites();
    Environments env;
    env.left.resize(s + 1);
    env.right.resize(s + 1);
    env.left[0] = MatrixXcd::Ones(1, 1);
    for (int a = 0; a < s; ++a) {
        env.left[a + 1] =
            transfer(mps.site(a), env.left[a], [](Index) { return 1.0; });
    }
    env.right[s] = MatrixXcd::Ones(1, 1);
    for (int a = s - 1; a >= 0; --a) {
        const Tensor3 &t = mps.site(a);
        MatrixXcd out = MatrixXcd::Zero(t.left(), t.left());
        for (Index p = 0; p < t.phys(); ++p) {
            out.noalias() += t.slice(p) * env.right[a + 1] * t.slice(p).adjoint();
        }
        env.right[a] = std::move(out);
    }
    return env;
}

double close(const MatrixXcd &left, const MatrixXcd &right) {
    return (left.cwiseProduct(right.transpose())).sum().real();
}

int block_size(const BlockedMps &mps, int pos) {
    return static_cast<int>(mps.block_qubits(mps.block_at(pos)).size());
}

/// Contribution of left index a: <O_a^2> + 2 sum_{b > a} <O_a O_b>.
double pair_row(const BlockedMps &mps, const Environments &env, int a) {
    const int s = mps.num_sites();
    const int ka = block_size(mps, a);
    const Tensor3 &ta = mps.site(a);

    double row = close(transfer(ta, env.left[a],
                                [ka](Index p) {
                                    const double m = block_magnetization(p, ka);
                                    return m * m;
                                }),
                       env.right[a + 1]);

    MatrixXcd carry = transfer(
        ta, env.left[a], [ka](Index p) { return block_magnetization(p, ka); });
    for (int b = a + 1; b < s; ++b) {
        const int kb = block_size(mps, b);
        const Tensor3 &tb = mps.site(b);
        row += 2.0 * close(transfer(tb, carry,
                                    [kb](Index p) {
                                        return block_magnetization(p, kb);
                                    }),
                           env.right[b + 1]);
        if (b + 1 < s) {
            carry = transfer(tb, carry, [](Index) { return 1.0; });
        }
    }
    return row;
}

} // namespace

double z_tot_mps(const BlockedMps &mps) {
    const Environments env = environments(mps);
    const int s = mps.num_sites();
    double total = 0.0;
    for (int a = 0; a < s; ++a) {
        const int k = block_size(mps, a);
        total += close(transfer(mps.site(a), env.left[a],
                                [k](Index p) { return block_magnetization(p, k); }),
                       env.right[a + 1]);
    }
    const double norm = env.left[s](0, 0).real();
    return total / (mps.num_qubits() * norm);
}

double z2_tot_mps(const BlockedMps &mps, Backend backend) {
    const Environments env = environments(mps);
    const int s = mps.num_sites();
    std::vector<double> rows(s, 0.0);
    if (backend == Backend::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int a = 0; a < s; ++a) {
            rows[a] = pair_row(mps, env, a);
        }
    } else {
        for (int a = 0; a < s; ++a) {
            rows[a] = pair_row(mps, env, a);
        }
    }
    double total = 0.0;
    for (double r : rows) {
        total += r;
    }
    const double n = mps.num_qubits();
    const double norm = env.left[s](0, 0).real();
    return total / (n * n * norm);
}

namespace {

kernels::ZMoments moments(const StateVector &sv, Backend backend) {
    return backend == Backend::parallel
               ? kernels::omp::z_moments(sv.amplitudes(), sv.num_qubits())
               : kernels::serial::z_moments(sv.amplitudes(), sv.num_qubits());
}

} // namespace

double z_tot_exact(const StateVector &sv, Backend backend) {
    const kernels::ZMoments m = moments(sv, backend);
    return m.z / m.norm;
}

double z2_tot_exact(const StateVector &sv, Backend backend) {
    const kernels::ZMoments m = moments(sv, backend);
    return m.z2 / m.norm;
}

} // namespace tfim
