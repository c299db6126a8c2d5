#pragma once

#include <span>
#include <vector>

#include "tfim/lattice.hpp"
#include "tfim/linalg.hpp"
#include "tfim/model.hpp"

namespace tfim {

class StateVector;

/**
 * Append-only record of every truncation fidelity.
 *
 * Steps are 1-based; step 0 is the initial state with F = 1. Gates applied
 * outside of begin_step()/end_step() are charged to step 0's open window but
 * never closed into a per-step product.
 */
class FidelityLedger {
  public:
    struct Entry {
        int step;
        int gate_ordinal;
        double fidelity;
    };

    void begin_step(int step);
    void next_gate() noexcept { ++gate_; }
    /// Throws InputError unless 0 < fidelity <= 1.
    void record(double fidelity);
    /// Closes the current step: per_step = product of its entries,
    /// cumulative = previous cumulative * per_step.
    double end_step();

    const std::vector<Entry> &entries() const noexcept { return entries_; }
    /// f_MPS(i) for i = 1..steps_closed(), stored at index i - 1.
    const std::vector<double> &per_step() const noexcept { return per_step_; }
    /// F_MPS(s) for s = 0..steps_closed(); cumulative()[0] == 1.
    const std::vector<double> &cumulative() const noexcept { return cumulative_; }
    double total() const noexcept { return cumulative_.back(); }
    int steps_closed() const noexcept {
        return static_cast<int>(per_step_.size());
    }

  private:
    std::vector<Entry> entries_;
    std::vector<double> per_step_;
    std::vector<double> cumulative_{1.0};
    std::size_t step_begin_ = 0;
    int step_ = 0;
    int gate_ = -1;
};

/**
 * Matrix product state over fused qubit blocks.
 *
 * Each block holds a contiguous run of qubits; within a block the first
 * qubit is the most significant bit of the physical index. Blocks start in
 * chain order and are only permuted transiently while routing a long-range
 * gate.
 *
 * The state is kept in mixed canonical form around a single site
 * (ortho_center): sites to its left are left isometries, sites to its right
 * are right isometries.
 */
class BlockedMps {
  public:
    /// Chain of `qubits_per_block` consecutive qubit blocks, center at 0.
    /// The caller is responsible for the canonical form of `sites`.
    BlockedMps(std::vector<Tensor3> sites, std::vector<int> qubits_per_block,
               Index chi_max, int ortho_center = 0);

    int num_sites() const noexcept { return static_cast<int>(sites_.size()); }
    int num_qubits() const noexcept { return num_qubits_; }
    Index chi_max() const noexcept { return chi_max_; }
    int ortho_center() const noexcept { return center_; }

    const Tensor3 &site(int pos) const { return sites_[pos]; }
    Index phys_dim(int pos) const { return sites_[pos].phys(); }
    /// Dimension of the bond between sites pos and pos + 1.
    Index bond_dim(int pos) const { return sites_[pos].right(); }
    Index max_bond() const;

    /// Largest bond created since the last reset_peak_bond().
    Index peak_bond() const noexcept { return peak_bond_; }
    void reset_peak_bond() { peak_bond_ = max_bond(); }

    /// Block currently stored at chain position pos.
    int block_at(int pos) const { return block_at_[pos]; }
    const std::vector<int> &block_qubits(int block) const {
        return block_qubits_[block];
    }
    /// Current chain position of the block holding qubit q.
    int position_of_qubit(int q) const {
        return position_of_block_[qubit_block_[q]];
    }
    int block_of_qubit(int q) const { return qubit_block_[q]; }
    /// Bit of the physical index that carries qubit q inside its block.
    int bit_of_qubit(int q) const { return qubit_bit_[q]; }

    /// QR/LQ sweeps until the center sits on `target`. No truncation.
    void move_ortho_center(int target);

    /**
     * Single-site gates (including two-qubit gates inside one block) are
     * contracted into the site and recorded with fidelity 1. Gates across
     * two adjacent sites are applied to the joint tensor, split by a
     * truncated SVD and recorded with the retained weight. Throws
     * RoutingRequired when the sites are not adjacent.
     */
    void apply_gate(const Gate &gate, FidelityLedger &ledger);

    /// apply_gate, routing non-adjacent pairs through a chain of adjacent
    /// site swaps (each truncated and recorded) and swapping back afterwards.
    void route_and_apply(const Gate &gate, FidelityLedger &ledger);

    /// Exchange the blocks at pos and pos + 1 with a truncated split. The
    /// center ends on the left site when absorb == Absorb::left.
    void swap_sites(int pos, FidelityLedger &ledger, Absorb absorb);

    /// Squared norm by full transfer contraction.
    double norm_squared() const;

    /// Largest deviation from the isometry conditions implied by the
    /// current center (0 for an exact mixed canonical form).
    double canonical_deviation() const;

    /// Dense state, qubit 0 most significant. Blocks must be in chain order.
    StateVector to_state_vector() const;

  private:
    void apply_local(int pos, const Gate &gate);
    void apply_two_site(int pos, const Gate &gate, FidelityLedger &ledger,
                        Absorb absorb, bool swap_blocks);
    void shift_center_right();
    void shift_center_left();
    void note_bond(Index dim) {
        if (dim > peak_bond_) {
            peak_bond_ = dim;
        }
    }

    std::vector<Tensor3> sites_;
    std::vector<int> block_at_;
    std::vector<int> position_of_block_;
    std::vector<std::vector<int>> block_qubits_;
    std::vector<int> qubit_block_;
    std::vector<int> qubit_bit_;
    int num_qubits_ = 0;
    Index chi_max_ = 1;
    int center_ = 0;
    Index peak_bond_ = 1;
};

/// Row split used for blocking: ceil(lx/2) qubits then floor(lx/2).
std::vector<int> block_sizes(const Grid &grid);

/// Product state prod_j (cos(theta/2)|0> + sin(theta/2)|1>) with all bond
/// dimensions 1 and the blocking of block_sizes(grid).
BlockedMps init_product_mps(const Grid &grid, double theta, Index chi_max);

} // namespace tfim
