#include "tfim/evolution.hpp"

#include "tfim/errors.hpp"

namespace tfim {

EvolutionResult run_evolution(const Grid &grid, const ModelParams &params,
                              Index chi_max, const MpsObserver &observer) {
    if (params.steps < 0) {
        throw InputError("negative step count");
    }
    const Circuit circuit = build_trotter_step(grid, params);
    EvolutionResult out{init_product_mps(grid, initial_theta(params), chi_max),
                        FidelityLedger{},
                        {}};
    out.records.reserve(static_cast<std::size_t>(params.steps) + 1);

    auto snapshot = [&](int step, double f_step) {
        out.records.push_back({step, z_tot_mps(out.mps), z2_tot_mps(out.mps),
                               f_step, out.ledger.total(), out.mps.peak_bond()});
        if (observer) {
            observer(step, out.mps);
        }
    };

    snapshot(0, 1.0);
    for (int step = 1; step <= params.steps; ++step) {
        out.mps.reset_peak_bond();
        out.ledger.begin_step(step);
        for (const Gate &gate : circuit.gates) {
            out.ledger.next_gate();
            out.mps.route_and_apply(gate, out.ledger);
        }
        snapshot(step, out.ledger.end_step());
    }
    return out;
}

std::vector<StepRecord> evolve_exact(const Grid &grid, const ModelParams &params,
                                     const ExactOptions &options,
                                     const ExactObserver &observer) {
    if (params.steps < 0) {
        throw InputError("negative step count");
    }
    require_exact_capacity(grid.n(), options.max_qubits);
    const Circuit circuit = build_trotter_step(grid, params);
    StateVector sv = StateVector::product_state(grid.n(), initial_theta(params));

    std::vector<StepRecord> records;
    records.reserve(static_cast<std::size_t>(params.steps) + 1);
    auto snapshot = [&](int step) {
        records.push_back({step, z_tot_exact(sv, options.backend),
                           z2_tot_exact(sv, options.backend), 1.0, 1.0, 0});
        if (observer) {
            observer(step, sv);
        }
    };

    snapshot(0);
    for (int step = 1; step <= params.steps; ++step) {
        sv.apply(circuit, options.backend);
        snapshot(step);
    }
    return records;
}

} // namespace tfim
