#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tfim/lattice.hpp"

namespace tfim {

/// Lattice dimensionality entering the mean-field angle arcsin(h / (d J)).
inline constexpr int kLatticeDimension = 2;

/// H = J sum_<ij> Z_i Z_j + h sum_i X_i, evolved for `steps` second-order
/// Trotter steps of size `dt` from the product state at theta_min + delta_theta.
struct ModelParams {
    double j_coupling = -1.0;
    double h_field = 2.0;
    double dt = 0.25;
    int steps = 20;
    double delta_theta = 0.0;
};

/// arcsin(h / (2 J)). Throws DomainError when |h / (2 J)| > 1.
double theta_min(const ModelParams &params);

/// theta_min(params) + params.delta_theta.
double initial_theta(const ModelParams &params);

enum class GateKind { single_x_rotation, two_zz_rotation, swap };

/**
 * single_x_rotation(q, a)  = exp(-i a X / 2)
 * two_zz_rotation(p, q, a) = exp(-i a Z_p Z_q)
 * swap(p, q)               exchanges the two qubits; angle unused
 */
struct Gate {
    GateKind kind;
    std::array<int, 2> targets;
    double angle;

    static Gate rx(int q, double angle) {
        return {GateKind::single_x_rotation, {q, -1}, angle};
    }
    static Gate zz(int p, int q, double angle) {
        return {GateKind::two_zz_rotation, {p, q}, angle};
    }
    static Gate swap(int p, int q) { return {GateKind::swap, {p, q}, 0.0}; }

    int arity() const noexcept {
        return kind == GateKind::single_x_rotation ? 1 : 2;
    }
};

/// Dense 2x2 or 4x4 matrix. For two-qubit gates the basis is |t0 t1>, with
/// targets[0] the more significant bit.
Eigen::MatrixXcd gate_matrix(const Gate &gate);

/// One Trotter step: X layer, ZZ layer (one gate per bond, in grid bond
/// order), closing X layer.
struct Circuit {
    std::vector<Gate> gates;
    std::size_t x_layer_size = 0;
    std::size_t zz_layer_size = 0;
};

Circuit build_trotter_step(const Grid &grid, const ModelParams &params);

} // namespace tfim
