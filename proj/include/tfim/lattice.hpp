#pragma once

#include <vector>

namespace tfim {

enum class BondKind { horizontal, horizontal_wrap, vertical, vertical_wrap };

/// Unordered nearest-neighbour pair. `a` is the qubit the bond starts from
/// when walking right (horizontal) or down (vertical).
struct Bond {
    int a;
    int b;
    BondKind kind;

    friend bool operator==(const Bond &, const Bond &) = default;
};

/**
 * Periodic lx x ly square lattice. Qubits are indexed row-major,
 * q = row * lx + col. The bond list is deduplicated, so for lx == 2 (or
 * ly == 2) the wraparound bond that coincides with an interior bond is
 * listed only once.
 *
 * Bonds are ordered: horizontal interior, horizontal wrap, vertical
 * interior, vertical wrap; each group sorted by (row, col) of `a`.
 */
class Grid {
  public:
    int lx() const noexcept { return lx_; }
    int ly() const noexcept { return ly_; }
    int n() const noexcept { return lx_ * ly_; }
    const std::vector<Bond> &bonds() const noexcept { return bonds_; }

    int qubit(int row, int col) const noexcept { return row * lx_ + col; }
    int row_of(int q) const noexcept { return q / lx_; }
    int col_of(int q) const noexcept { return q % lx_; }

  private:
    friend Grid build_grid(int lx, int ly);
    Grid(int lx, int ly, std::vector<Bond> bonds)
        : lx_(lx), ly_(ly), bonds_(std::move(bonds)) {}

    int lx_;
    int ly_;
    std::vector<Bond> bonds_;
};

/// Throws InvalidDimension unless lx >= 2 and ly >= 2.
Grid build_grid(int lx, int ly);

} // namespace tfim
