#include "tfim/mps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "tfim/errors.hpp"
#include "tfim/state_vector.hpp"

namespace tfim {

// ---------------------------------------------------------------------------
// FidelityLedger

void FidelityLedger::begin_step(int step) {
    step_ = step;
    gate_ = -1;
    step_begin_ = entries_.size();
}

void FidelityLedger::record(double fidelity) {
    if (!(fidelity > 0.0 && fidelity <= 1.0)) {
        throw InputError("truncation fidelity " + std::to_string(fidelity) +
                         " outside (0, 1]");
    }
    entries_.push_back({step_, std::max(gate_, 0), fidelity});
}

double FidelityLedger::end_step() {
    double f = 1.0;
    for (std::size_t k = step_begin_; k < entries_.size(); ++k) {
        f *= entries_[k].fidelity;
    }
    per_step_.push_back(f);
    cumulative_.push_back(cumulative_.back() * f);
    step_begin_ = entries_.size();
    return f;
}

// ---------------------------------------------------------------------------
// BlockedMps

BlockedMps::BlockedMps(std::vector<Tensor3> sites,
                       std::vector<int> qubits_per_block, Index chi_max,
                       int ortho_center)
    : sites_(std::move(sites)), chi_max_(chi_max), center_(ortho_center) {
    if (sites_.empty() || sites_.size() != qubits_per_block.size()) {
        throw InputError("site count does not match the block layout");
    }
    if (chi_max < 1) {
        throw InputError("chi_max must be >= 1");
    }
    if (ortho_center < 0 || ortho_center >= num_sites()) {
        throw InputError("orthogonality center out of range");
    }
    const int count = num_sites();
    block_at_.resize(count);
    position_of_block_.resize(count);
    block_qubits_.resize(count);
    for (int b = 0; b < count; ++b) {
        const int k = qubits_per_block[b];
        if (k < 1 || sites_[b].phys() != (Index{1} << k)) {
            throw InputError("physical dimension of site " + std::to_string(b) +
                             " is not 2^" + std::to_string(k));
        }
        if (b > 0 && sites_[b].left() != sites_[b - 1].right()) {
            throw InputError("bond mismatch between sites " +
                             std::to_string(b - 1) + " and " +
                             std::to_string(b));
        }
        block_at_[b] = b;
        position_of_block_[b] = b;
        for (int t = 0; t < k; ++t) {
            block_qubits_[b].push_back(num_qubits_);
            qubit_block_.push_back(b);
            qubit_bit_.push_back(k - 1 - t);
            ++num_qubits_;
        }
    }
    if (sites_.front().left() != 1 || sites_.back().right() != 1) {
        throw InputError("open boundary bonds must have dimension 1");
    }
    peak_bond_ = max_bond();
}

Index BlockedMps::max_bond() const {
    Index m = 1;
    for (const auto &s : sites_) {
        m = std::max(m, s.right());
    }
    return m;
}

void BlockedMps::shift_center_right() {
    const int c = center_;
    Tensor3 &a = sites_[c];
    const Index rows = a.left() * a.phys();
    const Index k = std::min(rows, a.right());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a.left_matrix());
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, k);
    Eigen::MatrixXcd r =
        qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

    const Tensor3 &next = sites_[c + 1];
    Eigen::MatrixXcd merged = r * next.right_matrix();
    Tensor3 updated = Tensor3::from_right_matrix(merged, next.phys(),
                                                 next.right());
    sites_[c] = Tensor3::from_left_matrix(q, a.left(), a.phys());
    sites_[c + 1] = std::move(updated);
    ++center_;
}

void BlockedMps::shift_center_left() {
    const int c = center_;
    Tensor3 &a = sites_[c];
    const Index cols = a.phys() * a.right();
    const Index k = std::min(cols, a.left());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a.right_matrix().adjoint());
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(cols, k);
    Eigen::MatrixXcd r =
        qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

    const Tensor3 &prev = sites_[c - 1];
    Eigen::MatrixXcd merged = prev.left_matrix() * r.adjoint();
    Tensor3 updated =
        Tensor3::from_left_matrix(merged, prev.left(), prev.phys());
    sites_[c] = Tensor3::from_right_matrix(q.adjoint(), a.phys(), a.right());
    sites_[c - 1] = std::move(updated);
    --center_;
}

void BlockedMps::move_ortho_center(int target) {
    if (target < 0 || target >= num_sites()) {
        throw InputError("orthogonality center target " +
                         std::to_string(target) + " out of range");
    }
    while (center_ < target) {
        shift_center_right();
    }
    while (center_ > target) {
        shift_center_left();
    }
}

namespace {

double z_sign(Index p, int bit) { return ((p >> bit) & 1) ? -1.0 : 1.0; }

} // namespace

void BlockedMps::apply_local(int pos, const Gate &gate) {
    Tensor3 &t = sites_[pos];
    const Index d = t.phys();
    switch (gate.kind) {
    case GateKind::single_x_rotation: {
        const int bit = qubit_bit_[gate.targets[0]];
        const Index mask = Index{1} << bit;
        const double c = std::cos(gate.angle / 2);
        const cplx mis{0.0, -std::sin(gate.angle / 2)};
        for (Index p = 0; p < d; ++p) {
            if (p & mask) {
                continue;
            }
            auto s0 = t.slice(p);
            auto s1 = t.slice(p | mask);
            Eigen::MatrixXcd old0 = s0;
            s0 = c * old0 + mis * s1;
            s1 = mis * old0 + c * s1;
        }
        break;
    }
    case GateKind::two_zz_rotation: {
        const int b0 = qubit_bit_[gate.targets[0]];
        const int b1 = qubit_bit_[gate.targets[1]];
        for (Index p = 0; p < d; ++p) {
            const double zz = z_sign(p, b0) * z_sign(p, b1);
            t.slice(p) *= std::polar(1.0, -gate.angle * zz);
        }
        break;
    }
    case GateKind::swap: {
        const int b0 = qubit_bit_[gate.targets[0]];
        const int b1 = qubit_bit_[gate.targets[1]];
        for (Index p = 0; p < d; ++p) {
            const Index x = (p >> b0) & 1;
            const Index y = (p >> b1) & 1;
            if (x == 1 && y == 0) {
                const Index partner = p ^ (Index{1} << b0) ^ (Index{1} << b1);
                Eigen::MatrixXcd tmp = t.slice(p);
                t.slice(p) = t.slice(partner);
                t.slice(partner) = tmp;
            }
        }
        break;
    }
    }
}

void BlockedMps::apply_two_site(int pos, const Gate &gate,
                                FidelityLedger &ledger, Absorb absorb,
                                bool swap_blocks) {
    if (center_ < pos) {
        move_ortho_center(pos);
    } else if (center_ > pos + 1) {
        move_ortho_center(pos + 1);
    }
    const Tensor3 &lt = sites_[pos];
    const Tensor3 &rt = sites_[pos + 1];
    const Index dl = lt.left();
    const Index d1 = lt.phys();
    const Index d2 = rt.phys();
    const Index dr = rt.right();

    Eigen::MatrixXcd theta = lt.left_matrix() * rt.right_matrix();

    if (swap_blocks) {
        Eigen::MatrixXcd swapped(dl * d2, d1 * dr);
        for (Index r = 0; r < dr; ++r) {
            for (Index p2 = 0; p2 < d2; ++p2) {
                for (Index p1 = 0; p1 < d1; ++p1) {
                    swapped.col(p1 + d1 * r).segment(dl * p2, dl) =
                        theta.col(p2 + d2 * r).segment(dl * p1, dl);
                }
            }
        }
        theta = std::move(swapped);
    } else {
        // Orient so that qa lives on the left site.
        int qa = gate.targets[0];
        int qb = gate.targets[1];
        bool flipped = false;
        if (position_of_qubit(qa) != pos) {
            std::swap(qa, qb);
            flipped = true;
        }
        const int ba = qubit_bit_[qa];
        const int bb = qubit_bit_[qb];
        if (gate.kind == GateKind::two_zz_rotation) {
            for (Index p2 = 0; p2 < d2; ++p2) {
                for (Index p1 = 0; p1 < d1; ++p1) {
                    const double zz = z_sign(p1, ba) * z_sign(p2, bb);
                    const cplx phase = std::polar(1.0, -gate.angle * zz);
                    for (Index r = 0; r < dr; ++r) {
                        theta.col(p2 + d2 * r).segment(dl * p1, dl) *= phase;
                    }
                }
            }
        } else {
            // Generic 4x4 in the |t0 t1> basis.
            const Eigen::MatrixXcd g = gate_matrix(gate);
            const Index ma = Index{1} << ba;
            const Index mb = Index{1} << bb;
            auto basis = [flipped](Index x, Index y) {
                return flipped ? 2 * y + x : 2 * x + y;
            };
            for (Index p2 = 0; p2 < d2; ++p2) {
                if (p2 & mb) {
                    continue;
                }
                for (Index p1 = 0; p1 < d1; ++p1) {
                    if (p1 & ma) {
                        continue;
                    }
                    for (Index r = 0; r < dr; ++r) {
                        std::array<Eigen::VectorXcd, 4> in;
                        for (Index x = 0; x < 2; ++x) {
                            for (Index y = 0; y < 2; ++y) {
                                in[basis(x, y)] =
                                    theta.col((p2 | (y * mb)) + d2 * r)
                                        .segment(dl * (p1 | (x * ma)), dl);
                            }
                        }
                        for (Index x = 0; x < 2; ++x) {
                            for (Index y = 0; y < 2; ++y) {
                                const Index row = basis(x, y);
                                Eigen::VectorXcd acc =
                                    Eigen::VectorXcd::Zero(dl);
                                for (Index k = 0; k < 4; ++k) {
                                    acc += g(row, k) * in[k];
                                }
                                theta.col((p2 | (y * mb)) + d2 * r)
                                    .segment(dl * (p1 | (x * ma)), dl) = acc;
                            }
                        }
                    }
                }
            }
        }
    }

    const Index left_phys = swap_blocks ? d2 : d1;
    const Index right_phys = swap_blocks ? d1 : d2;
    TruncatedSplit split = truncated_split(theta, chi_max_, absorb);
    sites_[pos] = Tensor3::from_left_matrix(split.left, dl, left_phys);
    sites_[pos + 1] = Tensor3::from_right_matrix(split.right, right_phys, dr);
    center_ = absorb == Absorb::left ? pos : pos + 1;
    note_bond(split.rank);
    ledger.record(split.fidelity);

    if (swap_blocks) {
        std::swap(block_at_[pos], block_at_[pos + 1]);
        position_of_block_[block_at_[pos]] = pos;
        position_of_block_[block_at_[pos + 1]] = pos + 1;
    }
}

void BlockedMps::swap_sites(int pos, FidelityLedger &ledger, Absorb absorb) {
    if (pos < 0 || pos + 1 >= num_sites()) {
        throw InputError("swap position " + std::to_string(pos) +
                         " out of range");
    }
    apply_two_site(pos, Gate::swap(-1, -1), ledger, absorb, true);
}

void BlockedMps::apply_gate(const Gate &gate, FidelityLedger &ledger) {
    for (int k = 0; k < gate.arity(); ++k) {
        if (gate.targets[k] < 0 || gate.targets[k] >= num_qubits_) {
            throw InputError("gate target " + std::to_string(gate.targets[k]) +
                             " out of range");
        }
    }
    if (gate.arity() == 1) {
        apply_local(position_of_qubit(gate.targets[0]), gate);
        ledger.record(1.0);
        return;
    }
    if (gate.targets[0] == gate.targets[1]) {
        throw InputError("two-qubit gate with identical targets");
    }
    const int pa = position_of_qubit(gate.targets[0]);
    const int pb = position_of_qubit(gate.targets[1]);
    if (pa == pb) {
        apply_local(pa, gate);
        ledger.record(1.0);
        return;
    }
    if (std::abs(pa - pb) != 1) {
        throw RoutingRequired("qubits " + std::to_string(gate.targets[0]) +
                              " and " + std::to_string(gate.targets[1]) +
                              " live on non-adjacent sites " +
                              std::to_string(pa) + " and " +
                              std::to_string(pb));
    }
    apply_two_site(std::min(pa, pb), gate, ledger, Absorb::right, false);
}

void BlockedMps::route_and_apply(const Gate &gate, FidelityLedger &ledger) {
    if (gate.arity() == 1) {
        apply_gate(gate, ledger);
        return;
    }
    const int pa = position_of_qubit(gate.targets[0]);
    const int pb = position_of_qubit(gate.targets[1]);
    if (std::abs(pa - pb) <= 1) {
        apply_gate(gate, ledger);
        return;
    }
    const int lo = std::min(pa, pb);
    const int hi = std::max(pa, pb);
    for (int k = hi - 1; k > lo; --k) {
        swap_sites(k, ledger, Absorb::left);
    }
    apply_gate(gate, ledger);
    for (int k = lo + 1; k < hi; ++k) {
        swap_sites(k, ledger, Absorb::right);
    }
}

double BlockedMps::norm_squared() const {
    Eigen::MatrixXcd env = Eigen::MatrixXcd::Ones(1, 1);
    for (const Tensor3 &a : sites_) {
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(a.right(), a.right());
        for (Index p = 0; p < a.phys(); ++p) {
            next.noalias() += a.slice(p).adjoint() * env * a.slice(p);
        }
        env = std::move(next);
    }
    return env(0, 0).real();
}

double BlockedMps::canonical_deviation() const {
    double worst = 0.0;
    for (int pos = 0; pos < num_sites(); ++pos) {
        const Tensor3 &a = sites_[pos];
        if (pos < center_) {
            const Eigen::MatrixXcd g = a.left_matrix().adjoint() * a.left_matrix();
            worst = std::max(
                worst, (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols()))
                           .cwiseAbs()
                           .maxCoeff());
        } else if (pos > center_) {
            const Eigen::MatrixXcd g =
                a.right_matrix() * a.right_matrix().adjoint();
            worst = std::max(
                worst, (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols()))
                           .cwiseAbs()
                           .maxCoeff());
        }
    }
    return worst;
}

StateVector BlockedMps::to_state_vector() const {
    for (int pos = 0; pos < num_sites(); ++pos) {
        if (block_at_[pos] != pos) {
            throw std::logic_error("to_state_vector needs blocks in chain order");
        }
    }
    // Accumulates with earlier sites in the *less* significant digits; the
    // final loop reverses the digit order.
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
    for (const Tensor3 &a : sites_) {
        Eigen::MatrixXcd prod = acc * a.right_matrix();
        acc = Eigen::Map<Eigen::MatrixXcd>(prod.data(), acc.rows() * a.phys(),
                                           a.right());
    }
    StateVector out(num_qubits_);
    auto amps = out.amplitudes();
    const Index dim = acc.rows();
    for (Index little = 0; little < dim; ++little) {
        Index rest = little;
        Index big = 0;
        for (const Tensor3 &a : sites_) {
            big = big * a.phys() + rest % a.phys();
            rest /= a.phys();
        }
        amps[big] = acc(little, 0);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<int> block_sizes(const Grid &grid) {
    const int first = (grid.lx() + 1) / 2;
    const int second = grid.lx() / 2;
    std::vector<int> sizes;
    sizes.reserve(2 * static_cast<std::size_t>(grid.ly()));
    for (int r = 0; r < grid.ly(); ++r) {
        sizes.push_back(first);
        sizes.push_back(second);
    }
    return sizes;
}

BlockedMps init_product_mps(const Grid &grid, double theta, Index chi_max) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    std::vector<int> sizes = block_sizes(grid);
    std::vector<Tensor3> sites;
    sites.reserve(sizes.size());
    for (int k : sizes) {
        const Index d = Index{1} << k;
        Tensor3 t(1, d, 1);
        for (Index p = 0; p < d; ++p) {
            double amp = 1.0;
            for (int bit = 0; bit < k; ++bit) {
                amp *= ((p >> bit) & 1) ? s : c;
            }
            t(0, p, 0) = amp;
        }
        sites.push_back(std::move(t));
    }
    return BlockedMps(std::move(sites), std::move(sizes), chi_max, 0);
}

} // namespace tfim
