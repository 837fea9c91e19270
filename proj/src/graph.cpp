#include "flagcalc/graph.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace flagcalc {

Graph::Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("graph: vertex count out of range: " + std::to_string(n));
    adj_.assign(static_cast<size_t>(n), 0u);
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge_checked(u, v);
}

void Graph::add_edge_checked(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: loops are not allowed");
    if (has_edge(u, v)) throw std::invalid_argument("graph: duplicate edge");
    adj_[u] |= 1u << v;
    adj_[v] |= 1u << u;
}

int Graph::edge_count() const {
    int total = 0;
    for (uint32_t row : adj_) total += __builtin_popcount(row);
    return total / 2;
}

int Graph::degree(int v) const {
    return __builtin_popcount(adj_[v]);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> result;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) result.emplace_back(u, v);
    return result;
}

Graph Graph::complement() const {
    Graph result(n_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (!has_edge(u, v)) {
                result.adj_[u] |= 1u << v;
                result.adj_[v] |= 1u << u;
            }
    return result;
}

Graph Graph::induced(std::vector<int> vertices) const {
    std::sort(vertices.begin(), vertices.end());
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] < 0 || vertices[i] >= n_)
            throw std::invalid_argument("induced: vertex out of range");
        if (i > 0 && vertices[i] == vertices[i - 1])
            throw std::invalid_argument("induced: duplicate vertex");
    }
    Graph result(static_cast<int>(vertices.size()));
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            if (has_edge(vertices[i], vertices[j])) {
                result.adj_[i] |= 1u << j;
                result.adj_[j] |= 1u << i;
            }
    return result;
}

Graph Graph::parse(std::string_view text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("graph \"" + std::string(text) + "\": " + why);
    };
    if (text.substr(0, 2) != "g:") fail("expected g:<n>:{...}");
    size_t pos = 2;
    size_t colon = text.find(':', pos);
    if (colon == std::string_view::npos) fail("missing vertex count");
    int n = 0;
    for (size_t i = pos; i < colon; ++i) {
        if (text[i] < '0' || text[i] > '9') fail("bad vertex count");
        n = n * 10 + (text[i] - '0');
        if (n > kMaxVertices) fail("vertex count too large");
    }
    if (colon == pos) fail("missing vertex count");
    if (n > 9) fail("text format supports at most 9 vertices");
    pos = colon + 1;
    if (pos >= text.size() || text[pos] != '{' || text.back() != '}') fail("missing edge braces");
    std::string_view body = text.substr(pos + 1, text.size() - pos - 2);
    Graph g(n);
    if (body.empty()) return g;
    size_t start = 0;
    while (true) {
        size_t comma = body.find(',', start);
        std::string_view pair = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (pair.size() != 2 || pair[0] < '1' || pair[0] > '9' || pair[1] < '1' || pair[1] > '9')
            fail("bad edge \"" + std::string(pair) + "\"");
        int u = pair[0] - '1', v = pair[1] - '1';
        if (u >= v) fail("edge \"" + std::string(pair) + "\" must have i<j");
        if (v >= n) fail("edge endpoint out of range in \"" + std::string(pair) + "\"");
        if (g.has_edge(u, v)) fail("duplicate edge \"" + std::string(pair) + "\"");
        g.adj_[u] |= 1u << v;
        g.adj_[v] |= 1u << u;
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return g;
}

std::string Graph::str() const {
    if (n_ > 9) throw std::invalid_argument("graph: text format supports at most 9 vertices");
    std::string out = "g:" + std::to_string(n_) + ":{";
    bool first = true;
    for (auto [u, v] : edges()) {
        if (!first) out += ',';
        first = false;
        out += static_cast<char>('1' + u);
        out += static_cast<char>('1' + v);
    }
    out += '}';
    return out;
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            g.adj_[u] |= 1u << v;
            g.adj_[v] |= 1u << u;
        }
    return g;
}

Graph Graph::path(int n) {
    Graph g(n);
    for (int u = 0; u + 1 < n; ++u) {
        g.adj_[u] |= 1u << (u + 1);
        g.adj_[u + 1] |= 1u << u;
    }
    return g;
}

Graph Graph::complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) {
            g.adj_[u] |= 1u << v;
            g.adj_[v] |= 1u << u;
        }
    return g;
}

bool CanonicalGraph::operator<(const CanonicalGraph& o) const {
    if (g_.vertex_count() != o.g_.vertex_count())
        return g_.vertex_count() < o.g_.vertex_count();
    int ea = g_.edge_count(), eb = o.g_.edge_count();
    if (ea != eb) return ea < eb;
    return g_.edges() < o.g_.edges();
}

namespace {

// Edge list of g relabelled by perm (perm[pos] = original vertex), generated
// in sorted order. Aborts and returns false as soon as the list is known to
// be lexicographically greater than best; returns true (filling out) when it
// is smaller or equal.
bool relabelled_edges_at_most(const Graph& g, const std::vector<int>& perm,
                              const std::vector<std::pair<int, int>>& best,
                              std::vector<std::pair<int, int>>& out) {
    out.clear();
    int n = g.vertex_count();
    bool strictly_smaller = false;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (!g.has_edge(perm[a], perm[b])) continue;
            std::pair<int, int> e{a, b};
            if (!strictly_smaller) {
                size_t idx = out.size();
                if (idx >= best.size() || best[idx] < e) return false;
                if (e < best[idx]) strictly_smaller = true;
            }
            out.push_back({a, b});
        }
    }
    return true;
}

}  // namespace

CanonicalGraph canonical_form(const Graph& g) {
    int n = g.vertex_count();
    if (n > Graph::kMaxCanonical)
        throw std::invalid_argument("canonical_form: graph too large (max " +
                                    std::to_string(Graph::kMaxCanonical) + " vertices)");
    if (n <= 1) return CanonicalGraph(g);

    // The minimal encoding always starts with a maximum-degree vertex: its
    // incident edges occupy the earliest pairs.
    int max_degree = 0;
    for (int v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));

    // Seed best with the identity relabelling so comparisons always have a
    // full list to compare against.
    std::vector<std::pair<int, int>> best = g.edges();
    std::vector<std::pair<int, int>> candidate;
    candidate.reserve(best.size());
    std::vector<int> perm(n);
    for (int first = 0; first < n; ++first) {
        if (g.degree(first) != max_degree) continue;
        perm[0] = first;
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (v != first) rest.push_back(v);
        do {
            std::copy(rest.begin(), rest.end(), perm.begin() + 1);
            if (relabelled_edges_at_most(g, perm, best, candidate) && candidate < best)
                best = candidate;
        } while (std::next_permutation(rest.begin(), rest.end()));
    }
    return CanonicalGraph(Graph(n, best));
}

bool is_isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.vertex_count(); ++v) {
        da.push_back(a.degree(v));
        db.push_back(b.degree(v));
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return canonical_form(a) == canonical_form(b);
}

long automorphism_count(const Graph& g) {
    int n = g.vertex_count();
    if (n > Graph::kMaxCanonical)
        throw std::invalid_argument("automorphism_count: graph too large");
    if (n <= 1) return 1;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long count = 0;
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n; ++v)
                if (g.has_edge(u, v) != g.has_edge(perm[u], perm[v])) {
                    ok = false;
                    break;
                }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

namespace {

// Grows level n from level n-1: every n-vertex graph minus a vertex is an
// (n-1)-vertex graph, so attaching a new vertex to every subset of every
// (n-1)-class covers all classes.
std::vector<CanonicalGraph> extend_classes(const std::vector<CanonicalGraph>& smaller, int n) {
    std::set<CanonicalGraph> classes;
    for (const CanonicalGraph& cg : smaller) {
        const Graph& base = cg.graph();
        auto base_edges = base.edges();
        for (uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            auto edges = base_edges;
            for (int v = 0; v < n - 1; ++v)
                if ((mask >> v) & 1u) edges.emplace_back(v, n - 1);
            classes.insert(canonical_form(Graph(n, edges)));
        }
    }
    return {classes.begin(), classes.end()};
}

}  // namespace

std::vector<CanonicalGraph> enumerate_graphs(int n, int cap) {
    if (cap > Graph::kMaxEnumeration) cap = Graph::kMaxEnumeration;
    if (n < 0) throw std::invalid_argument("enumerate_graphs: negative n");
    if (n > cap)
        throw std::invalid_argument("enumerate_graphs: n=" + std::to_string(n) +
                                    " above cap " + std::to_string(cap));

    static std::mutex mutex;
    static std::vector<std::vector<CanonicalGraph>> levels;
    std::lock_guard<std::mutex> lock(mutex);
    if (levels.empty()) levels.push_back({canonical_form(Graph())});
    while (static_cast<int>(levels.size()) <= n)
        levels.push_back(extend_classes(levels.back(), static_cast<int>(levels.size())));
    return levels[static_cast<size_t>(n)];
}

}  // namespace flagcalc
