#pragma once

#include <string>
#include <vector>

#include "stc/circuit.hpp"

namespace stc {

// Phase-free Pauli on the n(depth+1) spacetime qubits of a circuit. Layer
// index l in {0..depth} holds the component at half-level l + 0.5, i.e. the
// error inserted right after the level-l unitaries (layer 0 sits before the
// circuit).
class FaultOperator {
  public:
    FaultOperator() = default;
    FaultOperator(uint32_t n, uint32_t depth)
        : n_(n), depth_(depth), layers_(depth + 1, Pauli(n)) {}

    static FaultOperator identity(uint32_t n, uint32_t depth) { return {n, depth}; }

    uint32_t num_qubits() const { return n_; }
    uint32_t depth() const { return depth_; }
    size_t num_layers() const { return layers_.size(); }

    const Pauli &layer(size_t l) const { return layers_[l]; }
    Pauli &layer(size_t l) { return layers_[l]; }

    bool is_identity() const;
    // Number of spacetime qubits acted on.
    size_t weight() const;
    // (layer, qubit) pairs of the support, lexicographic.
    std::vector<std::pair<uint32_t, uint32_t>> support() const;

    FaultOperator &operator*=(const FaultOperator &o);
    FaultOperator operator*(const FaultOperator &o) const {
        FaultOperator r = *this;
        r *= o;
        return r;
    }

    bool operator==(const FaultOperator &o) const;
    bool operator!=(const FaultOperator &o) const { return !(*this == o); }
    // Deterministic total order for canonical output.
    bool operator<(const FaultOperator &o) const;
    uint64_t hash() const;

    // Length-2N bit vector, N = n(depth+1): X components ordered by
    // (layer, qubit), then Z components in the same order.
    BitVec symplectic() const;
    static FaultOperator from_symplectic(uint32_t n, uint32_t depth, const BitVec &v);

    // Semicolon-separated `half-level:pauli` entries for non-identity layers,
    // e.g. "0.5:Z0;1.5:X0*Z1". Identity is the empty string.
    std::string to_string() const;
    static FaultOperator parse(uint32_t n, uint32_t depth, const std::string &text);

  private:
    uint32_t n_ = 0, depth_ = 0;
    std::vector<Pauli> layers_;
};

// Layer-wise symplectic form: 1 if the operators anticommute.
int commutator(const FaultOperator &a, const FaultOperator &b);

// Outcome flips and residual end-of-circuit error caused by a fault.
struct Effect {
    BitVec f; // length m
    Pauli E;  // on n qubits, end-of-circuit frame
};

// Single-layer fault: P at half-level layer + 0.5.
FaultOperator eta(const Circuit &c, uint32_t layer, const Pauli &P);

// Forward accumulation: layer l of the result is the net error present just
// after level l, given that each layer of F strikes at its half-level.
FaultOperator cumulant(const Circuit &c, const FaultOperator &F);

// Backward accumulation, the adjoint of the cumulant under the layer-wise
// symplectic form.
FaultOperator back_cumulant(const Circuit &c, const FaultOperator &F);

Effect effect(const Circuit &c, const FaultOperator &F);

// The product of measured operators S_j with u_j = 1, each placed at the
// half-level right before its measurement.
FaultOperator measured_fault(const Circuit &c, const BitVec &u);
// Same, placed right after: used by the forward construction.
FaultOperator measured_fault_forward(const Circuit &c, const BitVec &u);

// Spacetime stabilizer attached to an outcome check: back_cumulant of
// measured_fault(u).
FaultOperator check_operator(const Circuit &c, const BitVec &u);
// cumulant of measured_fault_forward(u); equals check_operator for u in the
// dual of the outcome code.
FaultOperator check_operator_forward(const Circuit &c, const BitVec &u);

// Weight-one operator on the lowest-index support qubit of s that
// anticommutes with s: X there if that anticommutes, else Z.
Pauli flip_partner(const PhasedPauli &s);

} // namespace stc
