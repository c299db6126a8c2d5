#include "tfim/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace tfim::kernels {

namespace {

using u64 = std::uint64_t;

inline u64 insert_zero(u64 i, int bit) {
    const u64 low = i & ((u64{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

inline int bit_of(int n, int q) { return n - 1 - q; }

struct Chunking {
    u64 size;
    u64 count;
};

Chunking chunking(u64 dim) {
    const u64 size = std::max<u64>(1, (dim + kReductionChunks - 1) / kReductionChunks);
    return {size, (dim + size - 1) / size};
}

ZMoments chunk_moments(std::span<const cplx> amps, int n, u64 begin, u64 end) {
    ZMoments m;
    const double inv_n = 1.0 / n;
    for (u64 b = begin; b < end; ++b) {
        const double pop = std::norm(amps[b]);
        const double mag = (n - 2 * std::popcount(b)) * inv_n;
        m.norm += pop;
        m.z += pop * mag;
        m.z2 += pop * mag * mag;
    }
    return m;
}

cplx chunk_inner(std::span<const cplx> a, std::span<const cplx> b, u64 begin,
                 u64 end) {
    cplx acc{0.0, 0.0};
    for (u64 i = begin; i < end; ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

ZMoments combine(const std::array<ZMoments, kReductionChunks> &parts, u64 count) {
    ZMoments total;
    for (u64 c = 0; c < count; ++c) {
        total.norm += parts[c].norm;
        total.z += parts[c].z;
        total.z2 += parts[c].z2;
    }
    return total;
}

} // namespace

// ---------------------------------------------------------------------------

namespace serial {

void apply_rx(std::span<cplx> amps, int n, int q, double angle) {
    const int bit = bit_of(n, q);
    const u64 mask = u64{1} << bit;
    const u64 half = amps.size() / 2;
    const double c = std::cos(angle / 2);
    const cplx mis{0.0, -std::sin(angle / 2)};
    for (u64 i = 0; i < half; ++i) {
        const u64 i0 = insert_zero(i, bit);
        const u64 i1 = i0 | mask;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = c * a0 + mis * a1;
        amps[i1] = mis * a0 + c * a1;
    }
}

void apply_zz(std::span<cplx> amps, int n, int p, int q, double angle) {
    const int bp = bit_of(n, p);
    const int bq = bit_of(n, q);
    const cplx aligned = std::polar(1.0, -angle);
    const cplx anti = std::polar(1.0, angle);
    for (u64 i = 0; i < amps.size(); ++i) {
        const bool differ = ((i >> bp) ^ (i >> bq)) & 1;
        amps[i] *= differ ? anti : aligned;
    }
}

void apply_swap(std::span<cplx> amps, int n, int p, int q) {
    const int bp = bit_of(n, p);
    const int bq = bit_of(n, q);
    for (u64 i = 0; i < amps.size(); ++i) {
        if (((i >> bp) & 1) == 1 && ((i >> bq) & 1) == 0) {
            std::swap(amps[i], amps[i ^ (u64{1} << bp) ^ (u64{1} << bq)]);
        }
    }
}

ZMoments z_moments(std::span<const cplx> amps, int n) {
    const Chunking ch = chunking(amps.size());
    std::array<ZMoments, kReductionChunks> parts{};
    for (u64 c = 0; c < ch.count; ++c) {
        parts[c] = chunk_moments(amps, n, c * ch.size,
                                 std::min<u64>((c + 1) * ch.size, amps.size()));
    }
    return combine(parts, ch.count);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    const Chunking ch = chunking(a.size());
    cplx total{0.0, 0.0};
    for (u64 c = 0; c < ch.count; ++c) {
        total += chunk_inner(a, b, c * ch.size,
                             std::min<u64>((c + 1) * ch.size, a.size()));
    }
    return total;
}

} // namespace serial

// ---------------------------------------------------------------------------

namespace omp {

void apply_rx(std::span<cplx> amps, int n, int q, double angle) {
    const int bit = bit_of(n, q);
    const u64 mask = u64{1} << bit;
    const std::int64_t half = static_cast<std::int64_t>(amps.size() / 2);
    const double c = std::cos(angle / 2);
    const cplx mis{0.0, -std::sin(angle / 2)};
    cplx *data = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const u64 i0 = insert_zero(static_cast<u64>(i), bit);
        const u64 i1 = i0 | mask;
        const cplx a0 = data[i0];
        const cplx a1 = data[i1];
        data[i0] = c * a0 + mis * a1;
        data[i1] = mis * a0 + c * a1;
    }
}

void apply_zz(std::span<cplx> amps, int n, int p, int q, double angle) {
    const int bp = bit_of(n, p);
    const int bq = bit_of(n, q);
    const cplx aligned = std::polar(1.0, -angle);
    const cplx anti = std::polar(1.0, angle);
    const std::int64_t dim = static_cast<std::int64_t>(amps.size());
    cplx *data = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        const u64 u = static_cast<u64>(i);
        const bool differ = ((u >> bp) ^ (u >> bq)) & 1;
        data[i] *= differ ? anti : aligned;
    }
}

void apply_swap(std::span<cplx> amps, int n, int p, int q) {
    const int lo = std::min(bit_of(n, p), bit_of(n, q));
    const int hi = std::max(bit_of(n, p), bit_of(n, q));
    const std::int64_t quarter = static_cast<std::int64_t>(amps.size() / 4);
    cplx *data = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < quarter; ++i) {
        const u64 base = insert_zero(insert_zero(static_cast<u64>(i), lo), hi);
        std::swap(data[base | (u64{1} << lo)], data[base | (u64{1} << hi)]);
    }
}

ZMoments z_moments(std::span<const cplx> amps, int n) {
    const Chunking ch = chunking(amps.size());
    std::array<ZMoments, kReductionChunks> parts{};
    const std::int64_t count = static_cast<std::int64_t>(ch.count);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < count; ++c) {
        const u64 begin = static_cast<u64>(c) * ch.size;
        parts[c] = chunk_moments(amps, n, begin,
                                 std::min<u64>(begin + ch.size, amps.size()));
    }
    return combine(parts, ch.count);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    const Chunking ch = chunking(a.size());
    std::array<cplx, kReductionChunks> parts{};
    const std::int64_t count = static_cast<std::int64_t>(ch.count);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < count; ++c) {
        const u64 begin = static_cast<u64>(c) * ch.size;
        parts[c] = chunk_inner(a, b, begin,
                               std::min<u64>(begin + ch.size, a.size()));
    }
    cplx total{0.0, 0.0};
    for (u64 c = 0; c < ch.count; ++c) {
        total += parts[c];
    }
    return total;
}

} // namespace omp

} // namespace tfim::kernels
