#include <complex>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "dense_oracle.hpp"
#include "tfim/kernels.hpp"
#include "tfim/errors.hpp"
#include "tfim/state_vector.hpp"

using namespace tfim;
using kernels::cplx;

namespace {

std::vector<cplx> random_state(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<cplx> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : v) {
        a = cplx(dist(rng), dist(rng));
        norm += std::norm(a);
    }
    for (auto &a : v) {
        a /= std::sqrt(norm);
    }
    return v;
}

Eigen::VectorXcd as_vector(const std::vector<cplx> &v) {
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

} // namespace

TEST_CASE("serial and OpenMP kernels agree bit for bit", "[kernels]") {
    const int n = 12;
    const std::vector<cplx> start = random_state(n, 7u);

    std::vector<cplx> a = start;
    std::vector<cplx> b = start;
    for (int q = 0; q < n; ++q) {
        kernels::serial::apply_rx(a, n, q, 0.1 + q);
        kernels::omp::apply_rx(b, n, q, 0.1 + q);
    }
    kernels::serial::apply_zz(a, n, 0, 11, 0.3);
    kernels::omp::apply_zz(b, n, 0, 11, 0.3);
    kernels::serial::apply_swap(a, n, 3, 8);
    kernels::omp::apply_swap(b, n, 3, 8);
    CHECK(a == b);

    const kernels::ZMoments ms = kernels::serial::z_moments(a, n);
    const kernels::ZMoments mo = kernels::omp::z_moments(a, n);
    CHECK(ms.z == mo.z);
    CHECK(ms.z2 == mo.z2);
    CHECK(ms.norm == mo.norm);
    CHECK(kernels::serial::inner(a, start) == kernels::omp::inner(a, start));
}

TEST_CASE("kernels match the dense gate matrices", "[kernels]") {
    const int n = 6;
    const std::vector<cplx> start = random_state(n, 9u);
    const std::vector<Gate> gates{Gate::rx(0, 0.7), Gate::rx(5, -0.2),
                                  Gate::zz(1, 4, 0.9), Gate::zz(5, 2, -0.4),
                                  Gate::swap(0, 3)};
    for (const Gate &g : gates) {
        const Eigen::VectorXcd expected = oracle::embed_gate(g, n) * as_vector(start);
        for (Backend backend : {Backend::serial, Backend::parallel}) {
            StateVector sv(n);
            std::copy(start.begin(), start.end(), sv.amplitudes().begin());
            sv.apply(g, backend);
            CHECK((oracle::to_vector(sv) - expected).norm() < 1e-13);
        }
    }
}

TEST_CASE("z_moments match explicit operators", "[kernels]") {
    const int n = 7;
    const std::vector<cplx> v = random_state(n, 13u);
    const kernels::ZMoments m = kernels::serial::z_moments(v, n);
    CHECK(m.norm == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(m.z == Catch::Approx(oracle::z_tot(as_vector(v), n)).margin(1e-13));
    CHECK(m.z2 == Catch::Approx(oracle::z2_tot(as_vector(v), n)).margin(1e-13));
}

TEST_CASE("StateVector construction and capacity", "[kernels]") {
    const StateVector b = StateVector::basis_state(3, 5);
    CHECK(b[5] == cplx(1.0, 0.0));
    CHECK(b.norm() == 1.0);
    CHECK(state_vector_bytes(20) == (std::size_t{1} << 20) * sizeof(cplx));
    CHECK_NOTHROW(require_exact_capacity(24, kDefaultExactCap));
    CHECK_THROWS_AS(require_exact_capacity(25, kDefaultExactCap), ResourceError);
    try {
        require_exact_capacity(28, 24);
    } catch (const ResourceError &e) {
        CHECK(std::string(e.what()).find("MiB") != std::string::npos);
    }
    CHECK_THROWS_AS(overlap(StateVector(2), StateVector(3)), InputError);
}
