#include <catch2/catch_amalgamated.hpp>

#include "dense_oracle.hpp"
#include "tfim/linalg.hpp"

using namespace tfim;
using Eigen::MatrixXcd;

TEST_CASE("svd reconstructs its input", "[linalg]") {
    for (auto [rows, cols] : {std::pair{6, 6}, std::pair{8, 3}, std::pair{3, 10}}) {
        const MatrixXcd a = oracle::random_matrix(rows, cols, 11u + rows);
        const SvdResult r = svd(a);
        const MatrixXcd back = r.u * r.s.cast<cplx>().asDiagonal() * r.vh;
        CHECK((back - a).norm() < 1e-12 * a.norm());
        for (Index i = 1; i < r.s.size(); ++i) {
            CHECK(r.s(i - 1) >= r.s(i));
        }
    }
}

TEST_CASE("Tensor3 matrix views share one buffer", "[linalg]") {
    Tensor3 t(2, 3, 4);
    for (Index i = 0; i < t.data().size(); ++i) {
        t.data()(i) = cplx(double(i), 0.0);
    }
    CHECK(t.left_matrix()(1 + 2 * 2, 3) == t(1, 2, 3));
    CHECK(t.right_matrix()(1, 2 + 3 * 3) == t(1, 2, 3));
    CHECK(t.slice(2)(1, 3) == t(1, 2, 3));
    const Tensor3 u = Tensor3::from_left_matrix(t.left_matrix(), 2, 3);
    CHECK(u.data() == t.data());
    const Tensor3 v = Tensor3::from_right_matrix(t.right_matrix(), 3, 4);
    CHECK(v.data() == t.data());
}

TEST_CASE("truncated_split without truncation is exact", "[linalg]") {
    MatrixXcd theta = oracle::random_matrix(8, 8, 3u);
    theta /= theta.norm();
    for (Absorb absorb : {Absorb::left, Absorb::right}) {
        const TruncatedSplit s = truncated_split(theta, 64, absorb);
        CHECK(s.rank == 8);
        CHECK(s.fidelity == 1.0);
        CHECK((s.left * s.right - theta).norm() < 1e-12);
    }
}

TEST_CASE("truncated_split drops numerically zero singular values", "[linalg]") {
    const MatrixXcd a = oracle::random_matrix(8, 3, 5u);
    const MatrixXcd b = oracle::random_matrix(3, 8, 6u);
    MatrixXcd theta = a * b;
    theta /= theta.norm();
    const TruncatedSplit s = truncated_split(theta, 8, Absorb::right);
    CHECK(s.rank == 3);
    CHECK(s.discarded_weight < 1e-20);
    CHECK((s.left * s.right - theta).norm() < 1e-12);
}

TEST_CASE("forced truncation", "[linalg]") {
    MatrixXcd theta = oracle::random_matrix(8, 8, 21u);
    theta /= theta.norm();
    const TruncatedSplit s = truncated_split(theta, 4, Absorb::right);
    CHECK(s.rank == 4);
    CHECK(s.left.cols() == 4);
    CHECK(s.right.rows() == 4);
    const double expected = oracle::schmidt_discarded_weight(theta, 4);
    CHECK(std::abs(s.discarded_weight - expected) < 1e-12);
    CHECK(std::abs((1.0 - s.fidelity) - expected) < 1e-12);

    SECTION("the isometric factor is orthonormal, the kept state is normalized") {
        CHECK((s.left.adjoint() * s.left - MatrixXcd::Identity(4, 4)).norm() < 1e-12);
        CHECK(std::abs((s.left * s.right).norm() - 1.0) < 1e-12);
    }
    SECTION("absorbing left makes the right factor an isometry") {
        const TruncatedSplit l = truncated_split(theta, 4, Absorb::left);
        CHECK((l.right * l.right.adjoint() - MatrixXcd::Identity(4, 4)).norm() < 1e-12);
        CHECK((l.left * l.right - s.left * s.right).norm() < 1e-10);
    }
    SECTION("the overlap with the truncated state is sqrt of the fidelity") {
        const cplx ov = (theta.adjoint() * (s.left * s.right)).trace();
        CHECK(std::abs(std::abs(ov) - std::sqrt(s.fidelity)) < 1e-12);
    }
}
