#pragma once

#include "exwb/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace exwb {

// Undirected simple graph with 1-based vertex labels. Vertices stand for
// yes/no propositions, edges join propositions that cannot both be true.
//
// Edges are stored as unordered pairs (i < j), sorted and duplicate-free.
class ExclusivityGraph {
public:
    // Validates and normalizes the edge list. Throws std::invalid_argument on
    // loops, out-of-range endpoints or duplicate edges (in either orientation).
    ExclusivityGraph(int n, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int i, int j) const;

    // Adjacency of vertex i (1-based) as a bitmask over bits 0..n-1.
    std::uint64_t adjacency_mask(int i) const { return adj_[static_cast<std::size_t>(i - 1)]; }

    bool is_independent_set(const std::vector<int>& members) const;
    bool is_clique(const std::vector<int>& members) const;

    static ExclusivityGraph from_json_text(const std::string& text);
    static ExclusivityGraph load(const std::string& path);
    std::string to_json_text() const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::uint64_t> adj_;
};

struct IndependentSet {
    std::vector<int> members;  // sorted, 1-based
};

struct Clique {
    std::vector<int> members;  // sorted, 1-based
};

// Graph on the index set of `vectors` with an edge (i,j) whenever
// |<v_i|v_j>| <= tol * ||v_i|| * ||v_j||. All comparisons are exact rational
// arithmetic, so tol = 0 means exact orthogonality.
ExclusivityGraph orthogonality_graph(const std::vector<std::vector<RationalComplex>>& vectors,
                                     const Rational& tol = Rational(0));

// Exact independence number with a maximum independent set as witness.
// Branch and bound (clique-cover bound via greedy coloring), vertices
// considered in ascending label order for a deterministic witness.
std::pair<int, IndependentSet> independence_number(const ExclusivityGraph& g);

// All inclusion-maximal cliques, each exactly once, in lexicographic order.
std::vector<Clique> maximal_cliques(const ExclusivityGraph& g);

struct ClassicalAssignment {
    int sum = 0;
    std::vector<int> assignment;  // assignment[v-1] in {0,1}
};

// Best 0/1 assignment with no edge having both endpoints set. The achieved sum
// equals the independence number.
ClassicalAssignment best_classical_assignment(const ExclusivityGraph& g);

}  // namespace exwb
