#include <cmath>
#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "dense_oracle.hpp"
#include "tfim/errors.hpp"
#include "tfim/evolution.hpp"
#include "tfim/observables.hpp"

using namespace tfim;
using Catch::Approx;

namespace {

double product_z2(int n, double theta) {
    const double c = std::cos(theta);
    return (n + double(n) * (n - 1) * c * c) / (double(n) * n);
}

} // namespace

TEST_CASE("product-state observables", "[observables]") {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{3, 4}}) {
        const Grid g = build_grid(lx, ly);
        const int n = g.n();
        for (double theta : {-std::numbers::pi / 2, 0.3, 1.2, std::numbers::pi / 2}) {
            const BlockedMps mps = init_product_mps(g, theta, 4);
            const StateVector sv = StateVector::product_state(n, theta);
            CHECK(z_tot_mps(mps) == Approx(std::cos(theta)).margin(1e-14));
            CHECK(z_tot_exact(sv) == Approx(std::cos(theta)).margin(1e-14));
            CHECK(z2_tot_mps(mps) == Approx(product_z2(n, theta)).margin(1e-14));
            CHECK(z2_tot_exact(sv) == Approx(product_z2(n, theta)).margin(1e-14));
        }
    }
    SECTION("equator state on 12 qubits") {
        const Grid g = build_grid(3, 4);
        const BlockedMps mps = init_product_mps(g, std::numbers::pi / 2, 4);
        CHECK(z2_tot_mps(mps) == Approx(1.0 / 12).margin(1e-14));
    }
}

TEST_CASE("GHZ state", "[observables]") {
    const int n = 8;
    StateVector sv(n);
    sv.amplitudes()[0] = 1.0 / std::sqrt(2.0);
    sv.amplitudes()[sv.size() - 1] = 1.0 / std::sqrt(2.0);
    CHECK(z_tot_exact(sv) == Approx(0.0).margin(1e-15));
    CHECK(z2_tot_exact(sv) == Approx(1.0).margin(1e-15));

    SECTION("as a bond-dimension-2 MPS") {
        // Blocks of 2: GHZ = sum_s |ss..s>, bond index carries s.
        std::vector<Tensor3> sites;
        for (int k = 0; k < 4; ++k) {
            Tensor3 t(k == 0 ? 1 : 2, 4, k == 3 ? 1 : 2);
            for (int s = 0; s < 2; ++s) {
                const Index l = (k == 0) ? 0 : s;
                const Index r = (k == 3) ? 0 : s;
                t(l, s == 0 ? 0 : 3, r) = (k == 0) ? 1.0 / std::sqrt(2.0) : 1.0;
            }
            sites.push_back(t);
        }
        const BlockedMps mps(sites, {2, 2, 2, 2}, 4, 0);
        CHECK(z_tot_mps(mps) == Approx(0.0).margin(1e-15));
        CHECK(z2_tot_mps(mps) == Approx(1.0).margin(1e-15));
    }
}

TEST_CASE("evolved observables agree with explicit operator sums", "[observables]") {
    const Grid g = build_grid(3, 3);
    ModelParams p;
    p.steps = 4;
    p.delta_theta = 2 * std::numbers::pi / 9;
    const EvolutionResult r = run_evolution(g, p, 64);
    const StateVector sv = r.mps.to_state_vector();
    const Eigen::VectorXcd psi = oracle::to_vector(sv);
    const double z = oracle::z_tot(psi, 9);
    const double z2 = oracle::z2_tot(psi, 9);

    CHECK(z_tot_mps(r.mps) == Approx(z).margin(1e-10));
    CHECK(z_tot_exact(sv) == Approx(z).margin(1e-10));
    for (Backend b : {Backend::serial, Backend::parallel}) {
        CHECK(z2_tot_mps(r.mps, b) == Approx(z2).margin(1e-10));
        CHECK(z2_tot_exact(sv, b) == Approx(z2).margin(1e-10));
    }
    CHECK(z2_tot_mps(r.mps, Backend::serial) == z2_tot_mps(r.mps, Backend::parallel));
}

TEST_CASE("MPS estimators do not depend on the center position", "[observables]") {
    const Grid g = build_grid(2, 4);
    ModelParams p;
    p.steps = 3;
    EvolutionResult r = run_evolution(g, p, 8); // truncated
    const double z = z_tot_mps(r.mps);
    const double z2 = z2_tot_mps(r.mps);
    for (int c = 0; c < r.mps.num_sites(); ++c) {
        r.mps.move_ortho_center(c);
        CHECK(z_tot_mps(r.mps) == Approx(z).margin(1e-12));
        CHECK(z2_tot_mps(r.mps) == Approx(z2).margin(1e-12));
    }
}

TEST_CASE("exact evolution records", "[observables]") {
    const Grid g = build_grid(2, 2);
    ModelParams p;
    p.steps = 0;
    const auto zero = evolve_exact(g, p);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].step == 0);
    CHECK(zero[0].f_cum == 1.0);
    CHECK(zero[0].z_tot == Approx(std::cos(initial_theta(p))).margin(1e-15));

    p.steps = 5;
    const auto serial = evolve_exact(g, p, {kDefaultExactCap, Backend::serial});
    const auto parallel = evolve_exact(g, p, {kDefaultExactCap, Backend::parallel});
    REQUIRE(serial.size() == 6);
    for (std::size_t s = 0; s < serial.size(); ++s) {
        CHECK(serial[s].z2_tot == parallel[s].z2_tot);
        CHECK(serial[s].f_cum == 1.0);
    }
    CHECK_THROWS_AS(evolve_exact(build_grid(5, 5), p), ResourceError);
}
