#pragma once

#include <functional>
#include <vector>

#include "tfim/lattice.hpp"
#include "tfim/model.hpp"
#include "tfim/mps.hpp"
#include "tfim/observables.hpp"
#include "tfim/state_vector.hpp"

namespace tfim {

struct EvolutionResult {
    BlockedMps mps;
    FidelityLedger ledger;
    std::vector<StepRecord> records; // steps 0..params.steps
};

/// Called after every completed step (and once for step 0).
using MpsObserver = std::function<void(int step, const BlockedMps &)>;

/**
 * TEBD of the product state at initial_theta(params) under params.steps
 * Trotter steps. Every gate goes through BlockedMps::route_and_apply, so
 * long-range bonds are swap-routed and their truncations land in the ledger.
 * Deterministic for a given input.
 */
EvolutionResult run_evolution(const Grid &grid, const ModelParams &params,
                              Index chi_max, const MpsObserver &observer = {});

using ExactObserver = std::function<void(int step, const StateVector &)>;

struct ExactOptions {
    int max_qubits = kDefaultExactCap;
    Backend backend = Backend::parallel;
};

/// Dense evolution with the same gate sequence. Observables are streamed
/// into the returned records (f_step = f_cum = 1, chi_used = 0); full
/// snapshots are only exposed through the observer.
std::vector<StepRecord> evolve_exact(const Grid &grid, const ModelParams &params,
                                     const ExactOptions &options = {},
                                     const ExactObserver &observer = {});

} // namespace tfim
