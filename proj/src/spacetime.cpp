#include "stc/spacetime.hpp"

#include <sstream>

#include "json.hpp"
#include "stc/errors.hpp"

namespace stc {

BitVec SpacetimeCode::syndrome(const FaultOperator &F) const {
    BitVec s(stabilizers.size());
    for (size_t i = 0; i < stabilizers.size(); i++) s.set(i, commutator(stabilizers[i], F));
    return s;
}

BitVec syndrome_Q(const SpacetimeCode &code, const FaultOperator &F) { return code.syndrome(F); }

SpacetimeCode build_spacetime_code(const Circuit &c, const OutcomeCode &oc) {
    if (!oc.is_linear())
        throw ValidationError("outcome code has affine checks; linearize the circuit first");
    if (oc.m != c.num_measurements())
        throw DimensionError("outcome code does not match the circuit");
    SpacetimeCode code;
    code.n = c.num_qubits();
    code.depth = c.depth();
    code.N = code.n * (code.depth + 1);
    code.r = oc.num_checks();
    code.K = code.N - code.r;
    for (const auto &check : oc.checks) {
        code.check_basis.push_back(check.u);
        code.stabilizers.push_back(check_operator(c, check.u));
    }
    code.logical_gens = logical_generators(c, oc);
    return code;
}

namespace {

BitVec swap_halves(const BitVec &v) {
    size_t n = v.size() / 2;
    BitVec w(v.size());
    for (size_t q = 0; q < n; q++) {
        if (v.get(q)) w.set(n + q, true);
        if (v.get(n + q)) w.set(q, true);
    }
    return w;
}

} // namespace

std::vector<FaultOperator> logical_generators(const Circuit &c, const OutcomeCode &oc) {
    uint32_t n = c.num_qubits(), depth = c.depth();
    std::vector<FaultOperator> gens;

    // family (i): single-qubit operators on the final layer
    for (uint32_t q = 0; q < n; q++) {
        gens.push_back(eta(c, depth, Pauli::single(n, q, 'X')));
        gens.push_back(eta(c, depth, Pauli::single(n, q, 'Z')));
    }

    // family (ii): G(P, l) with P running over the commutant of the measured
    // operators at level l
    auto G = [&](const Pauli &P, uint32_t level) {
        FaultOperator g(n, depth);
        g.layer(level - 1) = P;
        g.layer(level) = c.level_unitary(level).conjugate(P);
        return g;
    };
    std::vector<std::vector<uint32_t>> meas_at_level(depth + 1);
    for (uint32_t j = 0; j < c.num_measurements(); j++)
        meas_at_level[c.measurement_level(j)].push_back(j);
    for (uint32_t level = 1; level <= depth; level++) {
        std::vector<BitVec> constraints;
        for (uint32_t j : meas_at_level[level])
            constraints.push_back(swap_halves(symplectic_vector(c.measurement(j).op.proj)));
        for (const BitVec &v : gf2::nullspace(constraints, 2 * n))
            gens.push_back(G(pauli_from_symplectic(v), level));
    }

    // family (iii): L(v) over a basis of the outcome code, from weight-one
    // flip partners of the measured operators
    for (const BitVec &v : oc.codeword_basis()) {
        FaultOperator L(n, depth);
        for (uint32_t j = 0; j < oc.m; j++)
            if (v.get(j)) L *= G(flip_partner(c.measurement(j).op), c.measurement_level(j));
        gens.push_back(L);
    }
    return gens;
}

std::string export_alist(const std::vector<FaultOperator> &rows, size_t N) {
    size_t ncols = 2 * N, nrows = rows.size();
    std::vector<std::vector<size_t>> col_of_row(nrows);
    std::vector<std::vector<size_t>> row_of_col(ncols);
    for (size_t i = 0; i < nrows; i++) {
        for (size_t j : rows[i].symplectic().support()) {
            col_of_row[i].push_back(j);
            row_of_col[j].push_back(i);
        }
    }
    size_t cmax = 0, rmax = 0;
    for (const auto &v : row_of_col) cmax = std::max(cmax, v.size());
    for (const auto &v : col_of_row) rmax = std::max(rmax, v.size());
    std::ostringstream out;
    out << ncols << " " << nrows << "\n" << cmax << " " << rmax << "\n";
    for (size_t j = 0; j < ncols; j++) out << row_of_col[j].size() << (j + 1 < ncols ? " " : "");
    out << "\n";
    for (size_t i = 0; i < nrows; i++) out << col_of_row[i].size() << (i + 1 < nrows ? " " : "");
    out << "\n";
    for (size_t j = 0; j < ncols; j++) {
        for (size_t t = 0; t < row_of_col[j].size(); t++)
            out << row_of_col[j][t] + 1 << (t + 1 < row_of_col[j].size() ? " " : "");
        out << "\n";
    }
    for (size_t i = 0; i < nrows; i++) {
        for (size_t t = 0; t < col_of_row[i].size(); t++)
            out << col_of_row[i][t] + 1 << (t + 1 < col_of_row[i].size() ? " " : "");
        out << "\n";
    }
    return out.str();
}

std::string export_matrix_market(const std::vector<FaultOperator> &rows, size_t N) {
    std::ostringstream body;
    size_t nnz = 0;
    for (size_t i = 0; i < rows.size(); i++)
        for (size_t j : rows[i].symplectic().support()) {
            body << i + 1 << " " << j + 1 << " 1\n";
            nnz++;
        }
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate integer general\n";
    out << rows.size() << " " << 2 * N << " " << nnz << "\n" << body.str();
    return out.str();
}

std::string spacetime_metadata_json(const SpacetimeCode &code) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["N"] = code.N;
    j["K"] = code.K;
    j["r"] = code.r;
    j["column_order"] = "x(layer,qubit) then z(layer,qubit)";
    return j.dump(2);
}

} // namespace stc
