#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flagcalc {

// Finite simple graph on vertices 0..n-1. The text format and all printed
// output use 1-based vertex names. Values are immutable after construction.
class Graph {
public:
    // Hosts can be moderately large (complete bipartite test families);
    // canonicalization is separately capped at kMaxCanonical vertices, and
    // enumeration of whole isomorphism classes at kMaxEnumeration.
    static constexpr int kMaxVertices = 30;
    static constexpr int kMaxCanonical = 8;
    static constexpr int kMaxEnumeration = 7;

    Graph() = default;                                              // the empty graph
    explicit Graph(int n);                                          // edgeless on n vertices
    Graph(int n, const std::vector<std::pair<int, int>>& edges);    // 0-based endpoints

    int vertex_count() const { return n_; }
    int edge_count() const;
    bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1u; }
    int degree(int v) const;
    uint32_t neighbor_mask(int v) const { return adj_[v]; }

    // Edges as 0-based pairs (u, v) with u < v, sorted ascending.
    std::vector<std::pair<int, int>> edges() const;

    Graph complement() const;

    // Induced subgraph on the given distinct vertices; the subgraph is
    // relabelled 0..|u|-1 preserving the order of vertex numbers.
    Graph induced(std::vector<int> vertices) const;

    // Text format, bit-exact: g:<n>:{<i><j>,...} with 1-based single-digit
    // endpoints, i<j. Only graphs with at most 9 vertices have a text form.
    static Graph parse(std::string_view text);
    std::string str() const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

    static Graph complete(int n);
    static Graph path(int n);
    static Graph edgeless(int n) { return Graph(n); }
    static Graph complete_bipartite(int a, int b);

private:
    void add_edge_checked(int u, int v);

    int n_ = 0;
    std::vector<uint32_t> adj_;  // adjacency bitmask rows
};

// A graph in canonical form: the representative of its isomorphism class
// whose sorted edge list is lexicographically minimal over all relabellings.
class CanonicalGraph {
public:
    const Graph& graph() const { return g_; }
    std::string str() const { return g_.str(); }

    bool operator==(const CanonicalGraph& o) const { return g_ == o.g_; }
    bool operator!=(const CanonicalGraph& o) const { return !(*this == o); }
    // Basis order: (edge count, edge list) lexicographic.
    bool operator<(const CanonicalGraph& o) const;

private:
    friend CanonicalGraph canonical_form(const Graph&);
    explicit CanonicalGraph(Graph g) : g_(std::move(g)) {}
    Graph g_;
};

// Exhaustive minimum over vertex relabellings; requires n <= 8.
CanonicalGraph canonical_form(const Graph& g);

bool is_isomorphic(const Graph& a, const Graph& b);

// Number of permutations of the vertex set preserving the edge set.
long automorphism_count(const Graph& g);

// One representative per isomorphism class of graphs on n vertices, in
// (edge count, edge list) order. Deterministic.
std::vector<CanonicalGraph> enumerate_graphs(int n, int cap = 7);

}  // namespace flagcalc
