#include "tfim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace tfim {

Tensor3 Tensor3::from_left_matrix(const Eigen::MatrixXcd &m, Index left,
                                  Index phys) {
    Tensor3 t(left, phys, m.cols());
    t.left_matrix() = m;
    return t;
}

Tensor3 Tensor3::from_right_matrix(const Eigen::MatrixXcd &m, Index phys,
                                   Index right) {
    Tensor3 t(m.rows(), phys, right);
    t.right_matrix() = m;
    return t;
}

namespace {

lapack_complex_double *as_lapack(cplx *p) {
    return reinterpret_cast<lapack_complex_double *>(p);
}

} // namespace

SvdResult svd(Eigen::MatrixXcd a) {
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(m, n);
    SvdResult out{Eigen::MatrixXcd(m, k), Eigen::VectorXd(k),
                  Eigen::MatrixXcd(k, n)};
    if (k == 0) {
        return out;
    }
    Eigen::MatrixXcd backup = a;
    lapack_int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'S', m, n, as_lapack(a.data()), m, out.s.data(),
        as_lapack(out.u.data()), m, as_lapack(out.vh.data()), k);
    if (info > 0) {
        a = std::move(backup);
        Eigen::VectorXd superb(std::max<lapack_int>(k - 1, 1));
        info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n,
                              as_lapack(a.data()), m, out.s.data(),
                              as_lapack(out.u.data()), m,
                              as_lapack(out.vh.data()), k, superb.data());
    }
    if (info != 0) {
        throw std::runtime_error("SVD failed, LAPACK info = " +
                                 std::to_string(info));
    }
    return out;
}

TruncatedSplit truncated_split(const Eigen::MatrixXcd &theta, Index chi,
                               Absorb absorb) {
    SvdResult dec = svd(theta);
    const Index full = dec.s.size();

    Index rank = 0;
    if (full > 0 && dec.s[0] > 0.0) {
        const double floor = dec.s[0] * kRankTolerance;
        while (rank < full && dec.s[rank] > floor) {
            ++rank;
        }
    }
    const Index keep = std::max<Index>(1, std::min(rank, chi));

    const double total = dec.s.squaredNorm();
    const double kept = dec.s.head(keep).squaredNorm();
    const double discarded = dec.s.tail(full - keep).squaredNorm();

    TruncatedSplit out;
    out.rank = keep;
    out.singular_values = dec.s.head(keep);
    out.discarded_weight = total > 0.0 ? discarded / total : 0.0;
    out.fidelity = 1.0 - out.discarded_weight;

    const Eigen::VectorXd weights =
        dec.s.head(keep) / (kept > 0.0 ? std::sqrt(kept) : 1.0);
    if (absorb == Absorb::right) {
        out.left = dec.u.leftCols(keep);
        out.right = weights.asDiagonal() * dec.vh.topRows(keep);
    } else {
        out.left = dec.u.leftCols(keep) * weights.asDiagonal();
        out.right = dec.vh.topRows(keep);
    }
    return out;
}

} // namespace tfim
