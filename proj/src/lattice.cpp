#include "tfim/lattice.hpp"

#include <string>

#include "tfim/errors.hpp"

namespace tfim {

Grid build_grid(int lx, int ly) {
    if (lx < 2 || ly < 2) {
        throw InvalidDimension("grid dimensions must be >= 2, got " +
                               std::to_string(lx) + "x" + std::to_string(ly));
    }
    auto q = [lx](int r, int c) { return r * lx + c; };

    std::vector<Bond> bonds;
    bonds.reserve(static_cast<std::size_t>(2 * lx * ly));

    for (int r = 0; r < ly; ++r) {
        for (int c = 0; c + 1 < lx; ++c) {
            bonds.push_back({q(r, c), q(r, c + 1), BondKind::horizontal});
        }
    }
    // With lx == 2 the wrap (r,1)-(r,0) is the interior bond again.
    if (lx > 2) {
        for (int r = 0; r < ly; ++r) {
            bonds.push_back({q(r, lx - 1), q(r, 0), BondKind::horizontal_wrap});
        }
    }
    for (int r = 0; r + 1 < ly; ++r) {
        for (int c = 0; c < lx; ++c) {
            bonds.push_back({q(r, c), q(r + 1, c), BondKind::vertical});
        }
    }
    if (ly > 2) {
        for (int c = 0; c < lx; ++c) {
            bonds.push_back({q(ly - 1, c), q(0, c), BondKind::vertical_wrap});
        }
    }
    return Grid(lx, ly, std::move(bonds));
}

} // namespace tfim
