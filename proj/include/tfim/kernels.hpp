#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace tfim {

/// Selects between the OpenMP kernels and their serial references.
enum class Backend { serial, parallel };

namespace kernels {

using cplx = std::complex<double>;

/// First two moments of the normalized magnetization m(b) / n over the
/// population |psi_b|^2, plus the total population.
struct ZMoments {
    double z = 0.0;
    double z2 = 0.0;
    double norm = 0.0;
};

/// Reductions are split into this many fixed chunks regardless of the
/// thread count, and the chunk sums are combined in order, so results are
/// bitwise identical across thread counts and backends.
inline constexpr std::size_t kReductionChunks = 64;

// Qubit q of an n-qubit register is bit (n - 1 - q) of the basis index.

namespace serial {
void apply_rx(std::span<cplx> amps, int n, int q, double angle);
void apply_zz(std::span<cplx> amps, int n, int p, int q, double angle);
void apply_swap(std::span<cplx> amps, int n, int p, int q);
ZMoments z_moments(std::span<const cplx> amps, int n);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
} // namespace serial

namespace omp {
void apply_rx(std::span<cplx> amps, int n, int q, double angle);
void apply_zz(std::span<cplx> amps, int n, int p, int q, double angle);
void apply_swap(std::span<cplx> amps, int n, int p, int q);
ZMoments z_moments(std::span<const cplx> amps, int n);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
} // namespace omp

} // namespace kernels
} // namespace tfim
