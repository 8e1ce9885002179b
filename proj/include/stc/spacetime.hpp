#pragma once

#include <string>
#include <vector>

#include "stc/fault.hpp"
#include "stc/outcome_code.hpp"

namespace stc {

// Stabilizer code on the N = n(depth+1) spacetime qubits of a circuit, with
// one generator per outcome check.
struct SpacetimeCode {
    uint32_t n = 0, depth = 0;
    uint32_t N = 0, K = 0, r = 0;
    std::vector<BitVec> check_basis;         // the u_i, length m each
    std::vector<FaultOperator> stabilizers;  // back-accumulated check operators
    std::vector<FaultOperator> logical_gens; // three families, see logical_generators

    // Component i is the commutator of stabilizer i with F.
    BitVec syndrome(const FaultOperator &F) const;
};

// Requires a linear outcome code (run linearize first); throws
// ValidationError otherwise.
SpacetimeCode build_spacetime_code(const Circuit &c, const OutcomeCode &oc);

// Generators completing the stabilizers to the full commutant, in three
// families: end-of-circuit single-qubit operators, per-level commutant pairs
// G(P, l) = P at l-0.5 times its level-l image at l+0.5, and codeword
// operators L(v) built from flip partners of the measured operators.
std::vector<FaultOperator> logical_generators(const Circuit &c, const OutcomeCode &oc);

BitVec syndrome_Q(const SpacetimeCode &code, const FaultOperator &F);

// Sparse export of the r x 2N check matrix (row i = symplectic form of
// stabilizer i; X columns by (layer, qubit), then Z columns).
std::string export_alist(const std::vector<FaultOperator> &rows, size_t N);
std::string export_matrix_market(const std::vector<FaultOperator> &rows, size_t N);
std::string spacetime_metadata_json(const SpacetimeCode &code);

} // namespace stc
