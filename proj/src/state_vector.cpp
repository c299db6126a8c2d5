#include "tfim/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "tfim/errors.hpp"

namespace tfim {

std::size_t state_vector_bytes(int n) {
    return (std::size_t{1} << n) * sizeof(cplx);
}

void require_exact_capacity(int n, int cap) {
    if (n <= cap && n <= kMaxExactCap) {
        return;
    }
    std::ostringstream msg;
    msg << "exact simulation of " << n << " qubits needs "
        << static_cast<double>(std::size_t{1} << std::min(n, 62)) *
               sizeof(cplx) / (1024.0 * 1024.0)
        << " MiB for one state vector; the cap is " << cap << " qubits ("
        << state_vector_bytes(std::min(cap, kMaxExactCap)) / (1024 * 1024)
        << " MiB)";
    throw ResourceError(msg.str());
}

StateVector::StateVector(int n) : n_(n) {
    if (n < 1 || n > kMaxExactCap) {
        throw InputError("state vector qubit count " + std::to_string(n) +
                         " outside [1, " + std::to_string(kMaxExactCap) + "]");
    }
    amps_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
}

StateVector StateVector::basis_state(int n, std::size_t index) {
    StateVector sv(n);
    if (index >= sv.size()) {
        throw InputError("basis index out of range");
    }
    sv.amps_[index] = 1.0;
    return sv;
}

StateVector StateVector::product_state(int n, double theta) {
    StateVector sv(n);
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    for (std::size_t b = 0; b < sv.size(); ++b) {
        double amp = 1.0;
        for (int bit = 0; bit < n; ++bit) {
            amp *= ((b >> bit) & 1) ? s : c;
        }
        sv.amps_[b] = amp;
    }
    return sv;
}

double StateVector::norm() const {
    return std::sqrt(kernels::serial::inner(amps_, amps_).real());
}

void StateVector::apply(const Gate &gate, Backend backend) {
    const bool par = backend == Backend::parallel;
    switch (gate.kind) {
    case GateKind::single_x_rotation:
        par ? kernels::omp::apply_rx(amps_, n_, gate.targets[0], gate.angle)
            : kernels::serial::apply_rx(amps_, n_, gate.targets[0], gate.angle);
        break;
    case GateKind::two_zz_rotation:
        par ? kernels::omp::apply_zz(amps_, n_, gate.targets[0],
                                     gate.targets[1], gate.angle)
            : kernels::serial::apply_zz(amps_, n_, gate.targets[0],
                                        gate.targets[1], gate.angle);
        break;
    case GateKind::swap:
        par ? kernels::omp::apply_swap(amps_, n_, gate.targets[0],
                                       gate.targets[1])
            : kernels::serial::apply_swap(amps_, n_, gate.targets[0],
                                          gate.targets[1]);
        break;
    }
}

void StateVector::apply(const Circuit &circuit, Backend backend) {
    for (const Gate &g : circuit.gates) {
        apply(g, backend);
    }
}

cplx overlap(const StateVector &a, const StateVector &b, Backend backend) {
    if (a.num_qubits() != b.num_qubits()) {
        throw InputError("overlap of " + std::to_string(a.num_qubits()) +
                         "- and " + std::to_string(b.num_qubits()) +
                         "-qubit states");
    }
    return backend == Backend::parallel
               ? kernels::omp::inner(a.amplitudes(), b.amplitudes())
               : kernels::serial::inner(a.amplitudes(), b.amplitudes());
}

} // namespace tfim
