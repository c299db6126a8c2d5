#pragma once

#include <Eigen/Dense>

#include "tfim/kernels.hpp"
#include "tfim/linalg.hpp"
#include "tfim/mps.hpp"
#include "tfim/state_vector.hpp"

namespace tfim {

/// One row of an observable time series.
struct StepRecord {
    int step = 0;
    double z_tot = 0.0;  // (1/N) sum_j <Z_j>
    double z2_tot = 0.0; // (1/N^2) sum_{j,k} <Z_j Z_k>, j == k included
    double f_step = 1.0; // f_MPS(step)
    double f_cum = 1.0;  // F_MPS(step)
    Index chi_used = 1;  // largest bond dimension reached during the step
};

// All MPS estimators contract transfer environments and leave the state
// untouched; they do not rely on the position of the orthogonality center.

double z_tot_mps(const BlockedMps &mps);

/**
 * sum over site pairs (a, b) of <O_a O_b>, where O_a is the summed Z of the
 * qubits in block a. Same-site terms (which contain the j == k diagonal)
 * are contracted locally; for a < b the environment carrying O_a is
 * transferred once per left index and reused for every b.
 */
double z2_tot_mps(const BlockedMps &mps, Backend backend = Backend::parallel);

double z_tot_exact(const StateVector &sv, Backend backend = Backend::parallel);
double z2_tot_exact(const StateVector &sv, Backend backend = Backend::parallel);

} // namespace tfim
