#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tfim/kernels.hpp"
#include "tfim/model.hpp"

namespace tfim {

using kernels::cplx;

/// Default largest register the dense oracle will allocate
/// (2^24 amplitudes = 256 MiB).
inline constexpr int kDefaultExactCap = 24;
/// Hard ceiling for the override flag.
inline constexpr int kMaxExactCap = 30;

/// Bytes needed for an n-qubit state vector.
std::size_t state_vector_bytes(int n);

/// Throws ResourceError (with the memory estimate) when n > cap.
void require_exact_capacity(int n, int cap);

/**
 * Dense 2^n amplitude vector. Qubit q is bit (n - 1 - q) of the basis
 * index, which matches the chain order of BlockedMps::to_state_vector().
 */
class StateVector {
  public:
    explicit StateVector(int n); // all amplitudes zero

    static StateVector basis_state(int n, std::size_t index);
    /// prod_j (cos(theta/2)|0> + sin(theta/2)|1>)
    static StateVector product_state(int n, double theta);

    int num_qubits() const noexcept { return n_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::span<cplx> amplitudes() noexcept { return amps_; }
    std::span<const cplx> amplitudes() const noexcept { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;

    void apply(const Gate &gate, Backend backend = Backend::parallel);
    void apply(const Circuit &circuit, Backend backend = Backend::parallel);

  private:
    int n_;
    std::vector<cplx> amps_;
};

/// <a|b>. Throws InputError on a qubit-count mismatch.
cplx overlap(const StateVector &a, const StateVector &b,
             Backend backend = Backend::parallel);

} // namespace tfim
