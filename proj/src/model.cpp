#include "tfim/model.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "tfim/errors.hpp"

namespace tfim {

double theta_min(const ModelParams &params) {
    const double ratio =
        params.h_field / (kLatticeDimension * params.j_coupling);
    if (!std::isfinite(ratio) || std::abs(ratio) > 1.0) {
        throw DomainError("arcsin argument h/(2J) = " + std::to_string(ratio) +
                          " lies outside [-1, 1]");
    }
    return std::asin(ratio);
}

double initial_theta(const ModelParams &params) {
    return theta_min(params) + params.delta_theta;
}

Eigen::MatrixXcd gate_matrix(const Gate &gate) {
    using cplx = std::complex<double>;
    const cplx i1{0.0, 1.0};
    switch (gate.kind) {
    case GateKind::single_x_rotation: {
        const double c = std::cos(gate.angle / 2);
        const double s = std::sin(gate.angle / 2);
        Eigen::MatrixXcd m(2, 2);
        m << c, -i1 * s, -i1 * s, c;
        return m;
    }
    case GateKind::two_zz_rotation: {
        const cplx aligned = std::exp(-i1 * gate.angle);
        const cplx anti = std::exp(i1 * gate.angle);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
        m(0, 0) = aligned;
        m(1, 1) = anti;
        m(2, 2) = anti;
        m(3, 3) = aligned;
        return m;
    }
    case GateKind::swap: {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
        m(0, 0) = 1;
        m(1, 2) = 1;
        m(2, 1) = 1;
        m(3, 3) = 1;
        return m;
    }
    }
    return {};
}

Circuit build_trotter_step(const Grid &grid, const ModelParams &params) {
    Circuit circuit;
    const double x_angle = params.h_field * params.dt;
    const double zz_angle = params.j_coupling * params.dt;

    circuit.gates.reserve(2 * static_cast<std::size_t>(grid.n()) +
                          grid.bonds().size());
    for (int q = 0; q < grid.n(); ++q) {
        circuit.gates.push_back(Gate::rx(q, x_angle));
    }
    for (const Bond &bond : grid.bonds()) {
        circuit.gates.push_back(Gate::zz(bond.a, bond.b, zz_angle));
    }
    for (int q = 0; q < grid.n(); ++q) {
        circuit.gates.push_back(Gate::rx(q, x_angle));
    }
    circuit.x_layer_size = static_cast<std::size_t>(grid.n());
    circuit.zz_layer_size = grid.bonds().size();
    return circuit;
}

} // namespace tfim
