#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stc/spacetime.hpp"

namespace stc {

// Connectivity structure on the spacetime qubits at half-levels
// 0.5 .. depth-0.5 (the final half-level is excluded): every circuit
// operation induces a clique on the vertices adjacent to its level and
// support.
class SpacetimeGraph {
  public:
    SpacetimeGraph(uint32_t n, uint32_t depth);

    uint32_t num_qubits() const { return n_; }
    uint32_t depth() const { return depth_; }
    uint32_t num_vertices() const { return n_ * depth_; }

    uint32_t vertex(uint32_t layer, uint32_t qubit) const { return layer * n_ + qubit; }
    std::pair<uint32_t, uint32_t> layer_qubit(uint32_t v) const { return {v / n_, v % n_}; }

    void add_clique(const std::vector<uint32_t> &vertices);
    const std::vector<uint32_t> &neighbors(uint32_t v) const { return adj_[v]; }
    size_t max_degree() const;

    // All vertices within the given graph distance of v (BFS).
    std::vector<uint32_t> ball(uint32_t v, uint32_t radius) const;

  private:
    uint32_t n_, depth_;
    std::vector<std::vector<uint32_t>> adj_;
};

SpacetimeGraph build_spacetime_graph(const Circuit &c);

// Graph vertices a fault acts on; content on the final half-level (outside
// the vertex set) is ignored.
std::vector<uint32_t> graph_support(const SpacetimeGraph &g, const FaultOperator &F);

// Partition of `support` into connected components of the induced subgraph,
// each sorted, ordered by smallest vertex.
std::vector<std::vector<uint32_t>> connected_components(const SpacetimeGraph &g,
                                                        const std::vector<uint32_t> &support);

// Independent generators of the subgroup of code stabilizers supported
// inside A: restrict stabilizers and logicals to A, reduce, build symplectic
// dual partners, and clean the single-qubit candidates on A against them.
std::vector<FaultOperator> restricted_group(const SpacetimeCode &code,
                                            const std::vector<uint32_t> &A);

struct SparsifyOptions {
    // Abort (or skip, below) when a ball's restricted group has more than
    // this many generators; the enumeration is 2^count.
    size_t generator_budget = 20;
    // Skip over-budget balls instead of throwing BudgetError.
    bool skip_budget_exceeded = false;
};

struct SparsifyReport {
    size_t balls_processed = 0;
    size_t budget_hits = 0;
    bool fallback = false; // true if original checks were needed to reach full rank
    std::map<size_t, size_t> weight_histogram; // of the returned basis
};

struct SparsifyResult {
    // Every connected stabilizer of weight <= M, deduplicated, sorted.
    std::vector<FaultOperator> connected;
    // Greedy low-weight independent basis of rank r (padded with original
    // check operators when the connected set cannot span; see report).
    std::vector<FaultOperator> basis;
    SparsifyReport report;
};

// Exhaustive search for connected stabilizers of weight <= M via balls of
// radius floor(M/2) around every vertex. Requires a linear outcome code.
SparsifyResult low_weight_stabilizers(const Circuit &c, uint32_t M,
                                      const SparsifyOptions &opt = {});

} // namespace stc
