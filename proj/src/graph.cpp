#include "exwb/graph.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace exwb {

namespace {

using json = nlohmann::json;

constexpr int kMaxVertices = 64;  // exact solvers are sized for desk-scale graphs

std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }

}  // namespace

ExclusivityGraph::ExclusivityGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n_ < 1)
        throw std::invalid_argument("n: vertex count must be positive, got " + std::to_string(n_));
    if (n_ > kMaxVertices)
        throw std::invalid_argument("n: at most " + std::to_string(kMaxVertices) +
                                    " vertices supported, got " + std::to_string(n_));
    adj_.assign(static_cast<std::size_t>(n_), 0);
    for (auto& [i, j] : edges_) {
        if (i < 1 || i > n_ || j < 1 || j > n_)
            throw std::invalid_argument("edges: endpoint out of range [1," + std::to_string(n_) +
                                        "]: (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (i == j)
            throw std::invalid_argument("edges: self-loop at vertex " + std::to_string(i));
        if (i > j)
            std::swap(i, j);
        if (adj_[static_cast<std::size_t>(i - 1)] & bit(j))
            throw std::invalid_argument("edges: duplicate edge (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
        adj_[static_cast<std::size_t>(i - 1)] |= bit(j);
        adj_[static_cast<std::size_t>(j - 1)] |= bit(i);
    }
    std::sort(edges_.begin(), edges_.end());
}

bool ExclusivityGraph::has_edge(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_ || i == j)
        return false;
    return (adj_[static_cast<std::size_t>(i - 1)] & bit(j)) != 0;
}

bool ExclusivityGraph::is_independent_set(const std::vector<int>& members) const {
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
            if (has_edge(members[a], members[b]))
                return false;
    return true;
}

bool ExclusivityGraph::is_clique(const std::vector<int>& members) const {
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
            if (!has_edge(members[a], members[b]))
                return false;
    return true;
}

ExclusivityGraph ExclusivityGraph::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("graph file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("graph file: top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw std::invalid_argument("n: missing or not an integer");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw std::invalid_argument("edges: missing or not an array");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < doc["edges"].size(); ++k) {
        const auto& e = doc["edges"][k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw std::invalid_argument("edges[" + std::to_string(k) +
                                        "]: expected a pair of integers");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return ExclusivityGraph(doc["n"].get<int>(), std::move(edges));
}

ExclusivityGraph ExclusivityGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string ExclusivityGraph::to_json_text() const {
    json doc;
    doc["n"] = n_;
    doc["edges"] = json::array();
    for (const auto& [i, j] : edges_)
        doc["edges"].push_back({i, j});
    return doc.dump(2) + "\n";
}

ExclusivityGraph orthogonality_graph(const std::vector<std::vector<RationalComplex>>& vectors,
                                     const Rational& tol) {
    if (vectors.empty())
        throw std::invalid_argument("orthogonality_graph: empty vector family");
    if (tol < 0)
        throw std::invalid_argument("orthogonality_graph: tol must be nonnegative");
    const std::size_t dim = vectors.front().size();
    if (dim == 0)
        throw std::invalid_argument("orthogonality_graph: zero-dimensional vectors");
    std::vector<Rational> norm2(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim)
            throw std::invalid_argument("orthogonality_graph: vector " + std::to_string(i + 1) +
                                        " has dimension " + std::to_string(vectors[i].size()) +
                                        ", expected " + std::to_string(dim));
        Rational s(0);
        for (const auto& c : vectors[i])
            s += c.abs2();
        if (s == 0)
            throw std::invalid_argument("orthogonality_graph: vector " + std::to_string(i + 1) +
                                        " is zero");
        norm2[i] = s;
    }
    const Rational tol2 = tol * tol;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            RationalComplex ip;
            for (std::size_t k = 0; k < dim; ++k)
                ip = ip + vectors[i][k].conj() * vectors[j][k];
            // |<vi|vj>|^2 <= tol^2 ||vi||^2 ||vj||^2, exactly
            if (ip.abs2() <= tol2 * norm2[i] * norm2[j])
                edges.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
        }
    }
    return ExclusivityGraph(static_cast<int>(vectors.size()), std::move(edges));
}

namespace {

// Maximum clique via branch and bound with a greedy-coloring upper bound.
// Candidates are scanned in ascending vertex order so the witness is
// deterministic. Run on the complement to get a maximum independent set.
class MaxCliqueSearch {
public:
    MaxCliqueSearch(int n, const std::vector<std::uint64_t>& adj) : n_(n), adj_(adj) {}

    std::pair<int, std::uint64_t> run() {
        best_size_ = 0;
        best_mask_ = 0;
        std::uint64_t all = (n_ == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
        expand(0, 0, all);
        return {best_size_, best_mask_};
    }

private:
    void expand(std::uint64_t current, int size, std::uint64_t candidates) {
        if (candidates == 0) {
            if (size > best_size_) {
                best_size_ = size;
                best_mask_ = current;
            }
            return;
        }
        // Greedy coloring of the candidate set: each color class is an
        // independent set, so a clique takes at most one vertex per class and
        // a vertex with color k caps the achievable clique at size + k.
        std::vector<int> order;
        std::vector<int> bound;
        color_sort(candidates, order, bound);
        for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
            if (size + bound[static_cast<std::size_t>(idx)] <= best_size_)
                return;  // remaining candidates cannot beat the incumbent
            const int v = order[static_cast<std::size_t>(idx)];
            const std::uint64_t vb = std::uint64_t{1} << (v - 1);
            expand(current | vb, size + 1, candidates & adj_[static_cast<std::size_t>(v - 1)]);
            candidates &= ~vb;
        }
    }

    void color_sort(std::uint64_t candidates, std::vector<int>& order, std::vector<int>& bound) {
        std::uint64_t uncolored = candidates;
        int color = 0;
        while (uncolored) {
            ++color;
            std::uint64_t admissible = uncolored;
            while (admissible) {
                const int v = std::countr_zero(admissible) + 1;
                order.push_back(v);
                bound.push_back(color);
                const std::uint64_t vb = std::uint64_t{1} << (v - 1);
                uncolored &= ~vb;
                admissible &= ~vb;
                admissible &= ~adj_[static_cast<std::size_t>(v - 1)];
            }
        }
    }

    int n_;
    const std::vector<std::uint64_t>& adj_;
    int best_size_ = 0;
    std::uint64_t best_mask_ = 0;
};

std::vector<int> mask_to_vertices(std::uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        const int v = std::countr_zero(mask) + 1;
        out.push_back(v);
        mask &= mask - 1;
    }
    return out;
}

}  // namespace

std::pair<int, IndependentSet> independence_number(const ExclusivityGraph& g) {
    const int n = g.vertex_count();
    const std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    // Independent sets of g are cliques of the complement.
    std::vector<std::uint64_t> coadj(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
        const std::uint64_t self = std::uint64_t{1} << (v - 1);
        coadj[static_cast<std::size_t>(v - 1)] = all & ~g.adjacency_mask(v) & ~self;
    }
    auto [size, mask] = MaxCliqueSearch(n, coadj).run();
    IndependentSet witness{mask_to_vertices(mask)};
    return {size, std::move(witness)};
}

namespace {

void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p,
                   std::uint64_t x, std::vector<std::uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    // Pivot on the vertex of p|x covering the most of p, lowest label on ties.
    int pivot = -1;
    int covered = -1;
    for (std::uint64_t scan = p | x; scan;) {
        const int u = std::countr_zero(scan) + 1;
        scan &= scan - 1;
        const int c = std::popcount(p & adj[static_cast<std::size_t>(u - 1)]);
        if (c > covered) {
            covered = c;
            pivot = u;
        }
    }
    std::uint64_t ext = p & ~adj[static_cast<std::size_t>(pivot - 1)];
    while (ext) {
        const int v = std::countr_zero(ext) + 1;
        const std::uint64_t vb = std::uint64_t{1} << (v - 1);
        ext &= ext - 1;
        const std::uint64_t& nv = adj[static_cast<std::size_t>(v - 1)];
        bron_kerbosch(adj, r | vb, p & nv, x & nv, out);
        p &= ~vb;
        x |= vb;
    }
}

}  // namespace

std::vector<Clique> maximal_cliques(const ExclusivityGraph& g) {
    const int n = g.vertex_count();
    const std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v)
        adj[static_cast<std::size_t>(v - 1)] = g.adjacency_mask(v);
    std::vector<std::uint64_t> masks;
    bron_kerbosch(adj, 0, all, 0, masks);
    std::vector<Clique> cliques;
    cliques.reserve(masks.size());
    for (const auto m : masks)
        cliques.push_back(Clique{mask_to_vertices(m)});
    std::sort(cliques.begin(), cliques.end(),
              [](const Clique& a, const Clique& b) { return a.members < b.members; });
    return cliques;
}

ClassicalAssignment best_classical_assignment(const ExclusivityGraph& g) {
    auto [value, witness] = independence_number(g);
    ClassicalAssignment out;
    out.sum = value;
    out.assignment.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const int v : witness.members)
        out.assignment[static_cast<std::size_t>(v - 1)] = 1;
    return out;
}

}  // namespace exwb
