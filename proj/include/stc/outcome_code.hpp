#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stc/circuit.hpp"

namespace stc {

// One linear constraint on the measurement record: (o|u) = b for every
// fault-free outcome string o.
struct OutcomeCheck {
    BitVec u; // length m, nonzero
    bool b;
};

// The set of measurement records a fault-free run can produce, presented as
// the solution set of independent affine checks.
struct OutcomeCode {
    uint32_t m = 0;
    std::vector<OutcomeCheck> checks;

    uint32_t num_checks() const { return uint32_t(checks.size()); }
    uint32_t dimension() const { return m - num_checks(); } // k
    bool is_linear() const;

    // Component i is (o|u_i) xor b_i; all zero exactly on valid records.
    BitVec syndrome(const BitVec &o) const;

    // Basis of the homogeneous solution space {o : (o|u_i) = 0}.
    std::vector<BitVec> codeword_basis() const;
    // A record satisfying all checks (handles affine checks).
    BitVec particular_solution() const;
};

// Stabilizer of the post-circuit state, with the set of measurement outcomes
// its sign depends on: the state is stabilized by (-1)^(prov|o) * op.
struct AugmentedStabilizer {
    PhasedPauli op; // expressed in the end-of-circuit frame
    BitVec prov;    // length m
};

using AugmentedSet = std::vector<AugmentedStabilizer>;

// Stabilizer group of the fault-free output state, plus a symplectic basis of
// logical representatives completing it.
struct OutputStabilizerGroup {
    uint32_t n = 0;
    std::vector<PhasedPauli> generators;           // independent, pairwise commuting
    std::vector<std::pair<Pauli, Pauli>> logicals; // anticommuting (X-like, Z-like) pairs

    // Commutator of e with each generator.
    BitVec syndrome(const Pauli &e) const;
    // Is p a product of generators up to phase?
    bool contains_projectively(const Pauli &p) const;
};

struct OutcomeAnalysis {
    OutcomeCode code;
    OutputStabilizerGroup group;
    AugmentedSet rows; // final stabilizer rows with provenance
};

// Result of decomposing +-P over a stabilizer set: sign and row index set,
// with negative meaning -P = product of the rows.
struct Decomposition {
    bool negative;
    BitVec rows; // indices into the set
};

// If +-P lies in the group generated by S (up to the tracked signs), return
// the decomposition; otherwise nullopt. P anticommuting with any row implies
// nullopt.
std::optional<Decomposition> membership_and_decompose(const AugmentedSet &S,
                                                      const PhasedPauli &P);

// Measurement update when `fresh.op` anticommutes with at least one row: the
// lowest-index anticommuting row is removed, every other anticommuting row is
// multiplied by it, and the fresh row is appended. Throws InternalError if
// nothing anticommutes.
void anticommuting_update(AugmentedSet &S, AugmentedStabilizer fresh);

// Single chronological pass over the circuit's measurements (each propagated
// to the end-of-circuit frame), producing the outcome code's full check set,
// the output stabilizer group, and the augmented rows.
OutcomeAnalysis compute_outcome_code(const Circuit &c);

// Flip measurement signs so that every check has b = 0. Idempotent; leaves
// all projective content untouched.
Circuit linearize(const Circuit &c);

// Free-function form of OutcomeCode::syndrome.
BitVec syndrome_O(const OutcomeCode &code, const BitVec &o);

// {m, k, checks: [{u, b}], output_group: {generators, logicals}} as JSON text.
std::string outcome_analysis_json(const OutcomeAnalysis &a);

} // namespace stc
