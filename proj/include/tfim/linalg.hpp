#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tfim {

using cplx = std::complex<double>;
using Index = Eigen::Index;

/**
 * Rank-3 MPS site tensor A[l, p, r] (left bond x physical x right bond).
 *
 * Stored column-major with offset l + left * (p + phys * r), so the same
 * buffer is both the (left*phys) x right "left matrix" and the
 * left x (phys*right) "right matrix" without copying.
 */
class Tensor3 {
  public:
    using MatrixMap = Eigen::Map<Eigen::MatrixXcd>;
    using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXcd>;
    using SliceMap = Eigen::Map<Eigen::MatrixXcd, 0, Eigen::OuterStride<>>;
    using ConstSliceMap =
        Eigen::Map<const Eigen::MatrixXcd, 0, Eigen::OuterStride<>>;

    Tensor3() = default;
    Tensor3(Index left, Index phys, Index right)
        : left_(left), phys_(phys), right_(right),
          data_(Eigen::VectorXcd::Zero(left * phys * right)) {}

    Index left() const noexcept { return left_; }
    Index phys() const noexcept { return phys_; }
    Index right() const noexcept { return right_; }

    cplx &operator()(Index l, Index p, Index r) {
        return data_[l + left_ * (p + phys_ * r)];
    }
    cplx operator()(Index l, Index p, Index r) const {
        return data_[l + left_ * (p + phys_ * r)];
    }

    MatrixMap left_matrix() { return {data_.data(), left_ * phys_, right_}; }
    ConstMatrixMap left_matrix() const {
        return {data_.data(), left_ * phys_, right_};
    }
    MatrixMap right_matrix() { return {data_.data(), left_, phys_ * right_}; }
    ConstMatrixMap right_matrix() const {
        return {data_.data(), left_, phys_ * right_};
    }

    /// left x right matrix at fixed physical index p.
    SliceMap slice(Index p) {
        return {data_.data() + left_ * p, left_, right_,
                Eigen::OuterStride<>(left_ * phys_)};
    }
    ConstSliceMap slice(Index p) const {
        return {data_.data() + left_ * p, left_, right_,
                Eigen::OuterStride<>(left_ * phys_)};
    }

    const Eigen::VectorXcd &data() const noexcept { return data_; }
    Eigen::VectorXcd &data() noexcept { return data_; }

    static Tensor3 from_left_matrix(const Eigen::MatrixXcd &m, Index left,
                                    Index phys);
    static Tensor3 from_right_matrix(const Eigen::MatrixXcd &m, Index phys,
                                     Index right);

  private:
    Index left_ = 0;
    Index phys_ = 0;
    Index right_ = 0;
    Eigen::VectorXcd data_;
};

/// Thin SVD A = U diag(s) Vh with s descending.
struct SvdResult {
    Eigen::MatrixXcd u;
    Eigen::VectorXd s;
    Eigen::MatrixXcd vh;
};

/// LAPACK zgesdd, falling back to zgesvd if divide-and-conquer fails to
/// converge.
SvdResult svd(Eigen::MatrixXcd a);

/// Singular values below this fraction of the largest are treated as exact
/// zeros when deciding the rank of a two-site block.
inline constexpr double kRankTolerance = 1e-14;

enum class Absorb { left, right };

/**
 * theta ~ left * right, keeping min(numerical rank, chi) singular values.
 * The kept spectrum is renormalized to unit 2-norm and multiplied into the
 * factor named by `absorb`; the other factor is an isometry.
 */
struct TruncatedSplit {
    Eigen::MatrixXcd left;
    Eigen::MatrixXcd right;
    Eigen::VectorXd singular_values; // kept, before renormalization
    double discarded_weight = 0.0;   // sum of discarded s^2 / sum of all s^2
    double fidelity = 1.0;           // 1 - discarded_weight
    Index rank = 0;
};

TruncatedSplit truncated_split(const Eigen::MatrixXcd &theta, Index chi,
                               Absorb absorb);

} // namespace tfim
