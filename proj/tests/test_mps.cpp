#include <cmath>
#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "dense_oracle.hpp"
#include "tfim/errors.hpp"
#include "tfim/evolution.hpp"
#include "tfim/mps.hpp"
#include "tfim/state_vector.hpp"

using namespace tfim;

namespace {

double distance(const StateVector &a, const StateVector &b) {
    return (oracle::to_vector(a) - oracle::to_vector(b)).norm();
}

} // namespace

TEST_CASE("block_sizes splits each row in two", "[mps]") {
    const Grid g = build_grid(5, 6);
    const auto sizes = block_sizes(g);
    REQUIRE(sizes.size() == 12);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        CHECK(sizes[i] == (i % 2 == 0 ? 3 : 2));
    }
    const BlockedMps mps = init_product_mps(g, 0.3, 16);
    CHECK(mps.num_sites() == 12);
    CHECK(mps.phys_dim(0) == 8);
    CHECK(mps.phys_dim(1) == 4);
    CHECK(mps.num_qubits() == 30);
    CHECK(mps.max_bond() == 1);
    CHECK(mps.position_of_qubit(3) == 1);
    CHECK(mps.position_of_qubit(5) == 2);
}

TEST_CASE("product-state MPS matches the dense product state", "[mps]") {
    const Grid g = build_grid(3, 3);
    const double theta = -std::numbers::pi / 2 + 0.4;
    const BlockedMps mps = init_product_mps(g, theta, 8);
    CHECK(distance(mps.to_state_vector(), StateVector::product_state(9, theta)) < 1e-14);
    CHECK(std::abs(mps.norm_squared() - 1.0) < 1e-14);
}

TEST_CASE("BlockedMps rejects inconsistent construction", "[mps]") {
    std::vector<Tensor3> sites{Tensor3(1, 2, 1), Tensor3(2, 2, 1)};
    CHECK_THROWS_AS(BlockedMps(sites, {1, 1}, 4), InputError);
    std::vector<Tensor3> ok{Tensor3(1, 2, 1), Tensor3(1, 2, 1)};
    CHECK_THROWS_AS(BlockedMps(ok, {1, 2}, 4), InputError);
    CHECK_THROWS_AS(BlockedMps(ok, {1, 1}, 0), InputError);
}

TEST_CASE("moving the orthogonality center", "[mps]") {
    const Grid g = build_grid(3, 4);
    ModelParams p;
    p.steps = 2;
    EvolutionResult r = run_evolution(g, p, 64);
    BlockedMps &mps = r.mps;
    const StateVector before = mps.to_state_vector();
    REQUIRE(mps.canonical_deviation() < 1e-12);

    SECTION("no-op at the current center") {
        const int c = mps.ortho_center();
        const auto data = mps.site(c).data();
        mps.move_ortho_center(c);
        CHECK(mps.ortho_center() == c);
        CHECK(mps.site(c).data() == data);
    }
    SECTION("every target keeps the state and the canonical form") {
        for (int target : {0, mps.num_sites() - 1, 3, 5, 1}) {
            mps.move_ortho_center(target);
            CHECK(mps.ortho_center() == target);
            CHECK(mps.canonical_deviation() < 1e-12);
            CHECK(distance(mps.to_state_vector(), before) < 1e-12);
        }
    }
    SECTION("out of range") {
        CHECK_THROWS_AS(mps.move_ortho_center(-1), InputError);
        CHECK_THROWS_AS(mps.move_ortho_center(mps.num_sites()), InputError);
    }
}

TEST_CASE("gates on the MPS agree with the dense register", "[mps]") {
    const Grid g = build_grid(3, 3);
    const double theta = 0.9;
    BlockedMps mps = init_product_mps(g, theta, 64);
    StateVector sv = StateVector::product_state(9, theta);
    FidelityLedger ledger;

    const std::vector<Gate> gates{
        Gate::rx(0, 0.4),      Gate::rx(4, -1.1),     Gate::zz(0, 1, 0.3), // in-block
        Gate::zz(1, 2, 0.5),   Gate::zz(3, 6, -0.7),  Gate::rx(7, 0.8),
        Gate::zz(0, 8, 0.25),  Gate::swap(2, 4),      Gate::zz(6, 0, 0.6)};
    for (const Gate &gate : gates) {
        mps.route_and_apply(gate, ledger);
        sv.apply(gate);
        CHECK(distance(mps.to_state_vector(), sv) < 1e-12);
    }
    CHECK(ledger.cumulative().back() == 1.0);
    for (int b = 0; b < mps.num_sites(); ++b) {
        CHECK(mps.block_at(b) == b);
    }
}

TEST_CASE("non-adjacent gates require routing", "[mps]") {
    const Grid g = build_grid(3, 3);
    BlockedMps mps = init_product_mps(g, 0.2, 8);
    FidelityLedger ledger;
    CHECK_THROWS_AS(mps.apply_gate(Gate::zz(0, 8, 0.1), ledger), RoutingRequired);
}

TEST_CASE("routing records one ledger entry per SVD", "[mps]") {
    const Grid g = build_grid(3, 4); // 8 blocks
    BlockedMps mps = init_product_mps(g, 0.7, 64);
    FidelityLedger ledger;

    SECTION("adjacent blocks: one split") {
        mps.route_and_apply(Gate::zz(0, 2, 0.3), ledger);
        CHECK(ledger.entries().size() == 1);
    }
    SECTION("blocks at distance d: 2(d - 1) swaps plus the gate") {
        // qubit 0 is in block 0, qubit 9 is in block 6.
        mps.route_and_apply(Gate::zz(9, 0, 0.3), ledger);
        CHECK(ledger.entries().size() == 2 * 5 + 1);
        for (int b = 0; b < mps.num_sites(); ++b) {
            CHECK(mps.block_at(b) == b);
        }
    }
    SECTION("in-block gates are recorded with unit fidelity") {
        mps.route_and_apply(Gate::zz(0, 1, 0.3), ledger);
        REQUIRE(ledger.entries().size() == 1);
        CHECK(ledger.entries()[0].fidelity == 1.0);
    }
}

TEST_CASE("FidelityLedger bookkeeping", "[mps]") {
    FidelityLedger ledger;
    CHECK(ledger.cumulative().size() == 1);
    CHECK(ledger.total() == 1.0);
    ledger.begin_step(1);
    ledger.next_gate();
    ledger.record(0.5);
    ledger.next_gate();
    ledger.record(0.8);
    CHECK(ledger.end_step() == Catch::Approx(0.4));
    ledger.begin_step(2);
    ledger.record(0.5);
    ledger.end_step();
    CHECK(ledger.per_step() == std::vector<double>{0.4, 0.5});
    CHECK(ledger.total() == Catch::Approx(0.2));
    CHECK(ledger.steps_closed() == 2);
    CHECK(ledger.entries()[1].gate_ordinal == 1);
    CHECK_THROWS_AS(ledger.record(0.0), InputError);
    CHECK_THROWS_AS(ledger.record(1.5), InputError);
}

TEST_CASE("full-rank TEBD reproduces the dense evolution", "[mps]") {
    ModelParams p;
    p.steps = 3;
    p.delta_theta = 2 * std::numbers::pi / 9;
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{2, 5},
                          std::pair{4, 4}}) {
        const Grid g = build_grid(lx, ly);
        EvolutionResult r = run_evolution(g, p, 1 << 12);
        StateVector sv = StateVector::product_state(g.n(), initial_theta(p));
        const Circuit step = build_trotter_step(g, p);
        for (int s = 0; s < p.steps; ++s) {
            sv.apply(step);
        }
        INFO(lx << "x" << ly);
        CHECK(r.ledger.total() == 1.0);
        CHECK(distance(r.mps.to_state_vector(), sv) < 1e-9);
        CHECK(std::abs(r.mps.norm_squared() - 1.0) < 1e-12);
    }
}

TEST_CASE("truncated TEBD stays normalized and canonical", "[mps]") {
    const Grid g = build_grid(4, 4);
    ModelParams p;
    p.steps = 3;
    const EvolutionResult r = run_evolution(g, p, 4);
    CHECK(r.mps.max_bond() <= 4);
    CHECK(std::abs(r.mps.norm_squared() - 1.0) < 1e-12);
    CHECK(r.mps.canonical_deviation() < 1e-10);
    CHECK(r.ledger.total() < 1.0);
    CHECK(r.ledger.steps_closed() == 3);
    REQUIRE(r.records.size() == 4);
    double product = 1.0;
    for (int s = 1; s <= 3; ++s) {
        product *= r.records[s].f_step;
        CHECK(r.records[s].f_cum == Catch::Approx(product).epsilon(1e-14));
        CHECK(r.records[s].chi_used <= 4);
    }
}
