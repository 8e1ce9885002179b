#include "stc/sparsify.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

#include "stc/errors.hpp"

namespace stc {

SpacetimeGraph::SpacetimeGraph(uint32_t n, uint32_t depth)
    : n_(n), depth_(depth), adj_(size_t(n) * depth) {}

void SpacetimeGraph::add_clique(const std::vector<uint32_t> &vertices) {
    for (uint32_t a : vertices)
        for (uint32_t b : vertices) {
            if (a == b) continue;
            auto &la = adj_[a];
            if (std::find(la.begin(), la.end(), b) == la.end()) la.push_back(b);
        }
}

size_t SpacetimeGraph::max_degree() const {
    size_t d = 0;
    for (const auto &l : adj_) d = std::max(d, l.size());
    return d;
}

std::vector<uint32_t> SpacetimeGraph::ball(uint32_t v, uint32_t radius) const {
    std::vector<int64_t> dist(num_vertices(), -1);
    std::deque<uint32_t> queue = {v};
    dist[v] = 0;
    std::vector<uint32_t> out = {v};
    while (!queue.empty()) {
        uint32_t cur = queue.front();
        queue.pop_front();
        if (dist[cur] == int64_t(radius)) continue;
        for (uint32_t nb : adj_[cur]) {
            if (dist[nb] >= 0) continue;
            dist[nb] = dist[cur] + 1;
            out.push_back(nb);
            queue.push_back(nb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SpacetimeGraph build_spacetime_graph(const Circuit &c) {
    SpacetimeGraph g(c.num_qubits(), c.depth());
    for (const Operation &op : c.operations()) {
        std::vector<uint32_t> verts;
        for (uint32_t q : op.support()) {
            verts.push_back(g.vertex(op.level - 1, q));
            if (op.level < c.depth()) verts.push_back(g.vertex(op.level, q));
        }
        g.add_clique(verts);
    }
    return g;
}

std::vector<uint32_t> graph_support(const SpacetimeGraph &g, const FaultOperator &F) {
    std::vector<uint32_t> out;
    for (const auto &[layer, q] : F.support())
        if (layer < g.depth()) out.push_back(g.vertex(layer, q));
    return out;
}

std::vector<std::vector<uint32_t>> connected_components(const SpacetimeGraph &g,
                                                        const std::vector<uint32_t> &support) {
    std::set<uint32_t> pending(support.begin(), support.end());
    std::vector<std::vector<uint32_t>> comps;
    while (!pending.empty()) {
        uint32_t seed = *pending.begin();
        pending.erase(pending.begin());
        std::vector<uint32_t> comp = {seed}, frontier = {seed};
        while (!frontier.empty()) {
            uint32_t cur = frontier.back();
            frontier.pop_back();
            for (uint32_t nb : g.neighbors(cur)) {
                auto it = pending.find(nb);
                if (it == pending.end()) continue;
                pending.erase(it);
                comp.push_back(nb);
                frontier.push_back(nb);
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

namespace {

// Mask selecting the X and Z symplectic columns of the vertices in A.
BitVec vertex_mask(uint32_t n, uint32_t depth, const std::vector<uint32_t> &A) {
    size_t N = size_t(n) * (depth + 1);
    BitVec mask(2 * N);
    for (uint32_t v : A) {
        uint32_t layer = v / n, q = v % n;
        mask.set(size_t(layer) * n + q, true);
        mask.set(N + size_t(layer) * n + q, true);
    }
    return mask;
}

BitVec swap_halves(const BitVec &v) {
    size_t half = v.size() / 2;
    BitVec w(v.size());
    for (size_t i = 0; i < half; i++) {
        if (v.get(i)) w.set(half + i, true);
        if (v.get(half + i)) w.set(i, true);
    }
    return w;
}

} // namespace

std::vector<FaultOperator> restricted_group(const SpacetimeCode &code,
                                            const std::vector<uint32_t> &A) {
    uint32_t n = code.n, depth = code.depth;
    BitVec mask = vertex_mask(n, depth, A);

    std::vector<BitVec> rows;
    auto add_restricted = [&](const FaultOperator &F) {
        BitVec v = F.symplectic() & mask;
        if (v.any()) rows.push_back(v);
    };
    for (const auto &S : code.stabilizers) add_restricted(S);
    for (const auto &L : code.logical_gens) add_restricted(L);
    gf2::rref(rows);

    std::vector<BitVec> swapped;
    swapped.reserve(rows.size());
    for (const auto &r : rows) swapped.push_back(swap_halves(r));
    std::vector<BitVec> duals = rows.empty() ? std::vector<BitVec>{} : gf2::dual_basis(swapped);

    std::vector<BitVec> cleaned;
    size_t N = size_t(n) * (depth + 1);
    for (uint32_t v : A) {
        uint32_t layer = v / n, q = v % n;
        for (size_t offset : {size_t(0), N}) {
            BitVec cand(2 * N);
            cand.set(offset + size_t(layer) * n + q, true);
            for (size_t j = 0; j < rows.size(); j++)
                if (cand.dot(swapped[j])) cand ^= duals[j];
            cleaned.push_back(cand);
        }
    }
    gf2::rref(cleaned);
    std::vector<FaultOperator> out;
    out.reserve(cleaned.size());
    for (const auto &v : cleaned) out.push_back(FaultOperator::from_symplectic(n, depth, v));
    return out;
}

SparsifyResult low_weight_stabilizers(const Circuit &c, uint32_t M, const SparsifyOptions &opt) {
    OutcomeAnalysis a = compute_outcome_code(c);
    SpacetimeCode code = build_spacetime_code(c, a.code);
    SpacetimeGraph g = build_spacetime_graph(c);

    SparsifyResult res;
    std::set<FaultOperator> found;
    for (uint32_t v = 0; v < g.num_vertices(); v++) {
        res.report.balls_processed++;
        std::vector<uint32_t> A = g.ball(v, M / 2);
        std::vector<FaultOperator> gens = restricted_group(code, A);
        if (gens.size() > opt.generator_budget) {
            auto [layer, q] = g.layer_qubit(v);
            if (opt.skip_budget_exceeded) {
                res.report.budget_hits++;
                continue;
            }
            throw BudgetError("ball around (" + std::to_string(layer) + ".5, q" +
                              std::to_string(q) + ") has " + std::to_string(gens.size()) +
                              " restricted generators; budget is " +
                              std::to_string(opt.generator_budget));
        }
        // Gray-code walk over the span: one generator multiplication per step.
        FaultOperator cur(code.n, code.depth);
        uint64_t total = uint64_t(1) << gens.size();
        for (uint64_t i = 1; i < total; i++) {
            cur *= gens[size_t(std::countr_zero(i))];
            if (cur.weight() > M) continue;
            auto comps = connected_components(g, graph_support(g, cur));
            if (comps.size() == 1) found.insert(cur);
        }
    }
    res.connected.assign(found.begin(), found.end());

    // Greedy low-weight independent basis, falling back to the original
    // check operators if the connected set cannot reach full rank.
    std::vector<const FaultOperator *> by_weight;
    for (const auto &F : res.connected) by_weight.push_back(&F);
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [](const FaultOperator *x, const FaultOperator *y) {
                         return x->weight() < y->weight();
                     });
    std::vector<BitVec> span;
    auto try_add = [&](const FaultOperator &F) {
        std::vector<BitVec> probe = span;
        probe.push_back(F.symplectic());
        if (gf2::rank(probe) == span.size()) return false;
        span.push_back(F.symplectic());
        gf2::rref(span);
        res.basis.push_back(F);
        return true;
    };
    for (const auto *F : by_weight) {
        if (res.basis.size() == code.r) break;
        try_add(*F);
    }
    if (res.basis.size() < code.r) {
        res.report.fallback = true;
        for (const auto &S : code.stabilizers) {
            if (res.basis.size() == code.r) break;
            try_add(S);
        }
    }
    for (const auto &F : res.basis) res.report.weight_histogram[F.weight()]++;
    return res;
}

} // namespace stc
