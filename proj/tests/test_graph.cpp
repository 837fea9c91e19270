#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "flagcalc/graph.hpp"

using namespace flagcalc;

namespace {

// Test-local oracles, independent of the library's canonicalization path.

Graph graph_from_mask(int n, unsigned mask) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if ((mask >> bit) & 1u) edges.emplace_back(i, j);
    return Graph(n, edges);
}

std::vector<std::pair<int, int>> oracle_min_edges(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::vector<std::pair<int, int>> best;
    bool first = true;
    do {
        std::vector<std::pair<int, int>> cur;
        for (auto [u, v] : g.edges()) {
            int a = relabel[u], b = relabel[v];
            cur.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(cur.begin(), cur.end());
        if (first || cur < best) {
            best = cur;
            first = false;
        }
    } while (std::next_permutation(relabel.begin(), relabel.end()));
    return best;
}

bool oracle_isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    int n = a.vertex_count();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n; ++v)
                if (a.has_edge(u, v) != b.has_edge(p[u], p[v])) {
                    ok = false;
                    break;
                }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

size_t oracle_class_count(int n) {
    std::set<std::vector<std::pair<int, int>>> classes;
    int pairs = n * (n - 1) / 2;
    for (unsigned mask = 0; mask < (1u << pairs); ++mask)
        classes.insert(oracle_min_edges(graph_from_mask(n, mask)));
    return classes.size();
}

}  // namespace

TEST_CASE("construction and validation") {
    CHECK(Graph().vertex_count() == 0);
    CHECK(Graph(3).edge_count() == 0);
    CHECK(Graph::complete(4).edge_count() == 6);
    CHECK(Graph::path(4).edge_count() == 3);
    CHECK(Graph::complete_bipartite(2, 3).edge_count() == 6);
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(-1), std::invalid_argument);
}

TEST_CASE("text format is bit-exact and rejects malformed input") {
    CHECK(Graph::parse("g:3:{12,23}") == Graph::path(3));
    CHECK(Graph::parse("g:0:{}") == Graph());
    CHECK(Graph::parse("g:3:{12,23}").str() == "g:3:{12,23}");
    CHECK(Graph::parse("g:5:{}").str() == "g:5:{}");
    CHECK(Graph::complete(3).str() == "g:3:{12,13,23}");
    CHECK_THROWS_AS(Graph::parse("g:3:{11}"), std::invalid_argument);      // loop
    CHECK_THROWS_AS(Graph::parse("g:3:{12,12}"), std::invalid_argument);   // duplicate
    CHECK_THROWS_AS(Graph::parse("g:3:{14}"), std::invalid_argument);      // out of range
    CHECK_THROWS_AS(Graph::parse("g:3:{21}"), std::invalid_argument);      // i<j violated
    CHECK_THROWS_AS(Graph::parse("h:3:{}"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::parse("g:3:{12"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::parse("g::{}"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::parse("g:12:{}"), std::invalid_argument);       // beyond text range
}

TEST_CASE("induced subgraphs") {
    Graph k3 = Graph::complete(3);
    CHECK(k3.induced({0, 1}) == Graph::complete(2));
    CHECK(k3.induced({}) == Graph());

    // the 3-path with edges {1,2},{2,3}: vertices 1 and 3 are non-adjacent
    Graph p3 = Graph::path(3);
    CHECK(p3.induced({0, 2}) == Graph(2));
    CHECK(p3.induced({0, 1}) == Graph::complete(2));

    // relabelling preserves vertex order
    Graph g(4, {{1, 3}});
    CHECK(g.induced({1, 3}) == Graph::complete(2));
    CHECK(g.induced({3, 1}) == Graph::complete(2));

    CHECK_THROWS_AS(p3.induced({0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(p3.induced({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(p3.induced({-1}), std::invalid_argument);
}

TEST_CASE("canonical form examples") {
    // path 1-2-3 and path 2-1-3 are relabellings of each other
    Graph p1(3, {{0, 1}, {1, 2}});
    Graph p2(3, {{1, 0}, {0, 2}});
    CHECK(canonical_form(p1) == canonical_form(p2));

    // the edgeless graph is its own canonical form
    Graph i3(3);
    CHECK(canonical_form(i3).graph() == i3);

    // all 6 labelled copies of the 3-path share one canonical form
    std::set<std::string> canonicals;
    std::vector<int> relabel{0, 1, 2};
    std::sort(relabel.begin(), relabel.end());
    do {
        Graph copy(3, {{relabel[0], relabel[1]}, {relabel[1], relabel[2]}});
        canonicals.insert(canonical_form(copy).str());
    } while (std::next_permutation(relabel.begin(), relabel.end()));
    CHECK(canonicals.size() == 1);
}

TEST_CASE("canonical form agrees with the exhaustive oracle and is idempotent") {
    for (int n = 0; n <= 5; ++n) {
        int pairs = n * (n - 1) / 2;
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            Graph g = graph_from_mask(n, mask);
            CanonicalGraph canon = canonical_form(g);
            CHECK(canon.graph().edges() == oracle_min_edges(g));
            CHECK(canonical_form(canon.graph()) == canon);
        }
    }
}

TEST_CASE("isomorphism matches brute-force bijection search") {
    CHECK(is_isomorphic(Graph::complete(3), Graph::complete(3)));
    CHECK(!is_isomorphic(Graph::path(3), Graph(3)));
    CHECK(is_isomorphic(Graph::path(4).complement(), Graph::path(4)));
    CHECK(oracle_isomorphic(Graph::path(4).complement(), Graph::path(4)));

    // every labelled graph is isomorphic to its canonical representative,
    // and distinct representatives are never isomorphic
    for (int n = 2; n <= 5; ++n) {
        int pairs = n * (n - 1) / 2;
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            Graph g = graph_from_mask(n, mask);
            CHECK(oracle_isomorphic(g, canonical_form(g).graph()));
        }
    }
    auto reps = enumerate_graphs(5);
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) {
            CHECK(!oracle_isomorphic(reps[i].graph(), reps[j].graph()));
            CHECK(!is_isomorphic(reps[i].graph(), reps[j].graph()));
        }
}

TEST_CASE("complement") {
    CHECK(Graph::complete(3).complement() == Graph(3));
    CHECK(Graph().complement() == Graph());
    for (int n = 0; n <= 5; ++n) {
        int pairs = n * (n - 1) / 2;
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            Graph g = graph_from_mask(n, mask);
            CHECK(g.complement().complement() == g);
        }
    }
}

TEST_CASE("enumeration counts match the brute-force oracle") {
    const size_t expected[] = {1, 1, 2, 4, 11, 34};
    for (int n = 0; n <= 5; ++n) {
        CHECK(enumerate_graphs(n).size() == expected[n]);
        CHECK(oracle_class_count(n) == expected[n]);
    }
}

TEST_CASE("level-3 basis is the expected quadruple in order") {
    auto basis = enumerate_graphs(3);
    REQUIRE(basis.size() == 4);
    CHECK(basis[0].str() == "g:3:{}");
    CHECK(basis[1].str() == "g:3:{12}");
    CHECK(basis[2].str() == "g:3:{12,13}");
    CHECK(basis[3].str() == "g:3:{12,13,23}");
}

TEST_CASE("enumeration preconditions and determinism") {
    CHECK_THROWS_AS(enumerate_graphs(-1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_graphs(8), std::invalid_argument);  // above default cap
    CHECK_THROWS_AS(enumerate_graphs(8, 8), std::invalid_argument);  // hard ceiling
    CHECK(enumerate_graphs(4) == enumerate_graphs(4));
    CHECK(enumerate_graphs(6).size() == 156);
    CHECK(enumerate_graphs(7, 7).size() == 1044);
}

TEST_CASE("automorphism counts") {
    CHECK(automorphism_count(Graph::complete(3)) == 6);
    CHECK(automorphism_count(Graph::path(3)) == 2);
    CHECK(automorphism_count(Graph()) == 1);
    CHECK(automorphism_count(Graph::path(4)) == 2);
    CHECK(automorphism_count(Graph::complete(4)) == 24);
    Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(automorphism_count(c5) == 10);
    for (const CanonicalGraph& g : enumerate_graphs(5))
        CHECK(automorphism_count(g.graph()) == automorphism_count(g.graph().complement()));
}
