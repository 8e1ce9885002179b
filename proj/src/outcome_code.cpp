#include "stc/outcome_code.hpp"

#include <algorithm>

#include "json.hpp"
#include "stc/errors.hpp"

namespace stc {

bool OutcomeCode::is_linear() const {
    return std::none_of(checks.begin(), checks.end(), [](const OutcomeCheck &c) { return c.b; });
}

BitVec OutcomeCode::syndrome(const BitVec &o) const {
    if (o.size() != m) throw DimensionError("outcome length does not match measurement count");
    BitVec s(checks.size());
    for (size_t i = 0; i < checks.size(); i++)
        s.set(i, checks[i].u.dot(o) ^ checks[i].b);
    return s;
}

std::vector<BitVec> OutcomeCode::codeword_basis() const {
    std::vector<BitVec> rows;
    rows.reserve(checks.size());
    for (const auto &c : checks) rows.push_back(c.u);
    return gf2::nullspace(rows, m);
}

BitVec OutcomeCode::particular_solution() const {
    // Each check's highest set bit is distinct (it is the measurement the
    // check fired on). Fixing checks in ascending order of that bit never
    // disturbs an already-fixed check, whose bits all sit strictly below.
    std::vector<size_t> order(checks.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;
    auto lead = [&](size_t i) {
        const auto &sup = checks[i].u.support();
        return sup.empty() ? size_t(0) : sup.back();
    };
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return lead(a) < lead(b); });
    BitVec o(m);
    for (size_t i : order)
        if (checks[i].u.dot(o) != checks[i].b) o.flip(lead(i));
    return o;
}

BitVec syndrome_O(const OutcomeCode &code, const BitVec &o) { return code.syndrome(o); }

std::optional<Decomposition> membership_and_decompose(const AugmentedSet &S,
                                                      const PhasedPauli &P) {
    std::vector<BitVec> rows;
    rows.reserve(S.size());
    for (const auto &r : S) rows.push_back(symplectic_vector(r.op.proj));
    auto coeffs = gf2::decompose(symplectic_vector(P.proj), rows);
    if (!coeffs) return std::nullopt;
    PhasedPauli prod = PhasedPauli::identity(P.num_qubits());
    for (size_t i = 0; i < S.size(); i++)
        if (coeffs->get(i)) prod *= S[i].op;
    uint8_t delta = uint8_t((prod.phase_exp - P.phase_exp) & 3);
    if (delta & 1) throw InternalError("odd phase difference between Hermitian operators");
    return Decomposition{delta == 2, *coeffs};
}

void anticommuting_update(AugmentedSet &S, AugmentedStabilizer fresh) {
    std::vector<size_t> anti;
    for (size_t i = 0; i < S.size(); i++)
        if (commutator(S[i].op, fresh.op)) anti.push_back(i);
    if (anti.empty()) throw InternalError("anticommuting_update: nothing anticommutes");
    size_t pivot = anti[0];
    for (size_t i = 1; i < anti.size(); i++) {
        S[anti[i]].op *= S[pivot].op;
        S[anti[i]].prov ^= S[pivot].prov;
    }
    S.erase(S.begin() + long(pivot));
    S.push_back(std::move(fresh));
}

namespace {

// Measurement operator expressed in the end-of-circuit frame. Unitaries at
// the measurement's own level act on disjoint qubits, so including them in
// the window is harmless.
PhasedPauli end_frame_operator(const Circuit &c, uint32_t j) {
    return c.window_unitary(c.measurement_level(j), c.depth()).conjugate(c.measurement(j).op);
}

OutputStabilizerGroup build_output_group(uint32_t n, const AugmentedSet &rows) {
    OutputStabilizerGroup g;
    g.n = n;
    for (const auto &r : rows) g.generators.push_back(r.op);

    // Symplectic form: omega(a, b) = a . swap(b) with x/z halves swapped.
    auto swapped = [n](const BitVec &v) {
        BitVec w(2 * n);
        for (size_t q = 0; q < n; q++) {
            if (v.get(q)) w.set(n + q, true);
            if (v.get(n + q)) w.set(q, true);
        }
        return w;
    };
    std::vector<BitVec> gen_vecs, gen_sw;
    for (const auto &p : g.generators) {
        gen_vecs.push_back(symplectic_vector(p.proj));
        gen_sw.push_back(swapped(gen_vecs.back()));
    }
    // Partners h_j anticommuting with generator j alone.
    std::vector<BitVec> duals =
        gen_sw.empty() ? std::vector<BitVec>{} : gf2::dual_basis(gen_sw);

    // Clean the single-qubit candidates so they commute with every generator,
    // then pull anticommuting pairs off the pool.
    std::vector<BitVec> pool;
    for (size_t q = 0; q < n; q++) {
        for (char L : {'X', 'Z'}) {
            BitVec v = symplectic_vector(Pauli::single(n, q, L));
            for (size_t j = 0; j < gen_sw.size(); j++)
                if (v.dot(gen_sw[j])) v ^= duals[j];
            pool.push_back(v);
        }
    }
    auto omega = [&](const BitVec &a, const BitVec &b) { return a.dot(swapped(b)); };
    while (true) {
        size_t ia = pool.size(), ib = pool.size();
        for (size_t i = 0; i < pool.size() && ia == pool.size(); i++)
            for (size_t j = i + 1; j < pool.size(); j++)
                if (omega(pool[i], pool[j])) {
                    ia = i;
                    ib = j;
                    break;
                }
        if (ia == pool.size()) break;
        BitVec a = pool[ia], b = pool[ib];
        pool.erase(pool.begin() + long(ib));
        pool.erase(pool.begin() + long(ia));
        for (auto &c : pool) {
            if (omega(a, c)) c ^= b;
            if (omega(b, c)) c ^= a;
        }
        g.logicals.emplace_back(pauli_from_symplectic(a), pauli_from_symplectic(b));
    }
    if (g.logicals.size() + g.generators.size() != n)
        throw InternalError("output group completion found the wrong number of logical pairs");
    return g;
}

} // namespace

BitVec OutputStabilizerGroup::syndrome(const Pauli &e) const {
    BitVec s(generators.size());
    for (size_t i = 0; i < generators.size(); i++)
        s.set(i, commutator(generators[i].proj, e));
    return s;
}

bool OutputStabilizerGroup::contains_projectively(const Pauli &p) const {
    std::vector<BitVec> rows;
    rows.reserve(generators.size());
    for (const auto &g : generators) rows.push_back(symplectic_vector(g.proj));
    return gf2::in_span(symplectic_vector(p), rows);
}

OutcomeAnalysis compute_outcome_code(const Circuit &c) {
    uint32_t m = c.num_measurements();
    OutcomeAnalysis out;
    out.code.m = m;
    AugmentedSet &S = out.rows;
    for (uint32_t j = 0; j < m; j++) {
        PhasedPauli M = end_frame_operator(c, j);
        bool anti = std::any_of(S.begin(), S.end(),
                                [&](const AugmentedStabilizer &r) { return commutator(r.op, M); });
        if (anti) {
            anticommuting_update(S, {M, BitVec::unit(m, j)});
            continue;
        }
        if (auto d = membership_and_decompose(S, M)) {
            BitVec u = BitVec::unit(m, j);
            for (size_t i : d->rows.support()) u ^= S[i].prov;
            out.code.checks.push_back({u, d->negative});
        } else {
            S.push_back({M, BitVec::unit(m, j)});
        }
    }
    out.group = build_output_group(c.num_qubits(), S);
    return out;
}

Circuit linearize(const Circuit &c) {
    OutcomeAnalysis a = compute_outcome_code(c);
    BitVec flips(a.code.m);
    for (const auto &check : a.code.checks)
        if (check.b) flips.flip(check.u.support().back()); // the measurement it fired on
    std::vector<Operation> ops = c.operations();
    for (auto &op : ops) {
        if (!op.is_measurement()) continue;
        MeasureOp mop = op.measurement();
        if (flips.get(mop.index)) {
            mop.op = mop.op.negated();
            op.body = mop;
        }
    }
    return Circuit(c.num_qubits(), c.depth(), std::move(ops));
}

std::string outcome_analysis_json(const OutcomeAnalysis &a) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["m"] = a.code.m;
    j["k"] = a.code.dimension();
    j["checks"] = nlohmann::json::array();
    for (const auto &c : a.code.checks)
        j["checks"].push_back({{"u", c.u.to_string()}, {"b", c.b ? 1 : 0}});
    nlohmann::json grp;
    grp["generators"] = nlohmann::json::array();
    for (const auto &g : a.group.generators) grp["generators"].push_back(g.to_string());
    grp["logicals"] = nlohmann::json::array();
    for (const auto &[x, z] : a.group.logicals)
        grp["logicals"].push_back({{"x", x.to_string()}, {"z", z.to_string()}});
    j["output_group"] = grp;
    return j.dump(2);
}

} // namespace stc
