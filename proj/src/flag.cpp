#include "flagcalc/flag.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace flagcalc {

TypeGraph TypeGraph::parse(std::string_view text) {
    if (text.substr(0, 2) != "t:")
        throw std::invalid_argument("type \"" + std::string(text) + "\": expected t:<k>:{...}");
    return TypeGraph(Graph::parse("g:" + std::string(text.substr(2))));
}

std::string TypeGraph::str() const {
    std::string s = g_.str();
    s[0] = 't';
    return s;
}

bool TypeGraph::operator<(const TypeGraph& o) const {
    if (size() != o.size()) return size() < o.size();
    return g_.edges() < o.g_.edges();
}

bool is_embedding(const TypeGraph& tau, const std::vector<int>& theta, const Graph& g) {
    int k = tau.size();
    if (static_cast<int>(theta.size()) != k)
        throw std::invalid_argument("is_embedding: theta has wrong arity");
    for (int i = 0; i < k; ++i) {
        if (theta[i] < 0 || theta[i] >= g.vertex_count())
            throw std::invalid_argument("is_embedding: theta image out of range");
        for (int j = i + 1; j < k; ++j)
            if (theta[i] == theta[j])
                throw std::invalid_argument("is_embedding: theta is not injective");
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (tau.graph().has_edge(i, j) != g.has_edge(theta[i], theta[j])) return false;
    return true;
}

Flag::Flag(Graph g, std::vector<int> labels, TypeGraph tau)
    : g_(std::move(g)), labels_(std::move(labels)), tau_(std::move(tau)) {
    if (!is_embedding(tau_, labels_, g_))
        throw std::invalid_argument("flag: labels are not an embedding of the type");
}

Flag Flag::parse(std::string_view text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("flag \"" + std::string(text) + "\": " + why);
    };
    size_t bar1 = text.find('|');
    size_t bar2 = bar1 == std::string_view::npos ? std::string_view::npos : text.find('|', bar1 + 1);
    if (bar1 == std::string_view::npos || bar2 == std::string_view::npos)
        fail("expected f:...|t:...|theta:...");
    std::string_view gpart = text.substr(0, bar1);
    std::string_view tpart = text.substr(bar1 + 1, bar2 - bar1 - 1);
    std::string_view thetapart = text.substr(bar2 + 1);
    if (gpart.substr(0, 2) != "f:") fail("expected f:<n>:{...} prefix");
    Graph g = Graph::parse("g:" + std::string(gpart.substr(2)));
    TypeGraph tau = TypeGraph::parse(tpart);
    if (thetapart.substr(0, 6) != "theta:") fail("expected theta:<vertices>");
    std::string_view digits = thetapart.substr(6);
    if (static_cast<int>(digits.size()) != tau.size()) fail("theta arity does not match type size");
    std::vector<int> labels;
    for (char c : digits) {
        if (c < '1' || c > '9') fail("bad theta digit");
        labels.push_back(c - '1');
    }
    return Flag(std::move(g), std::move(labels), std::move(tau));
}

std::string Flag::str() const {
    std::string s = g_.str();
    s[0] = 'f';
    s += '|';
    s += tau_.str();
    s += "|theta:";
    for (int v : labels_) s += static_cast<char>('1' + v);
    return s;
}

bool Flag::operator<(const Flag& o) const {
    if (tau_ != o.tau_) return tau_ < o.tau_;
    if (vertex_count() != o.vertex_count()) return vertex_count() < o.vertex_count();
    int ea = g_.edge_count(), eb = o.g_.edge_count();
    if (ea != eb) return ea < eb;
    auto edges_a = g_.edges(), edges_b = o.g_.edges();
    if (edges_a != edges_b) return edges_a < edges_b;
    return labels_ < o.labels_;
}

namespace {

// Relabels the flag so label i sits on vertex i; remaining vertices keep
// their relative order.
Flag normalize_labels(const Flag& f) {
    int v = f.vertex_count(), k = f.label_count();
    std::vector<int> new_id(v, -1);
    for (int i = 0; i < k; ++i) new_id[f.labels()[i]] = i;
    int next = k;
    for (int u = 0; u < v; ++u)
        if (new_id[u] < 0) new_id[u] = next++;
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : f.graph().edges()) {
        int x = new_id[a], y = new_id[b];
        edges.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::vector<int> labels(k);
    std::iota(labels.begin(), labels.end(), 0);
    return Flag(Graph(v, edges), labels, f.type());
}

}  // namespace

Flag canonical_form(const Flag& f) {
    Flag norm = normalize_labels(f);
    int v = norm.vertex_count(), k = norm.label_count();
    if (v > Graph::kMaxCanonical)
        throw std::invalid_argument("canonical_form(flag): flag too large");
    if (v - k <= 1) return norm;

    const Graph& g = norm.graph();
    std::vector<std::pair<int, int>> best = g.edges();
    std::vector<std::pair<int, int>> candidate;
    candidate.reserve(best.size());
    std::vector<int> perm(v);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> tail(perm.begin() + k, perm.end());
    do {
        std::copy(tail.begin(), tail.end(), perm.begin() + k);
        candidate.clear();
        bool smaller = false, viable = true;
        for (int a = 0; a < v && viable; ++a) {
            for (int b = a + 1; b < v; ++b) {
                if (!g.has_edge(perm[a], perm[b])) continue;
                std::pair<int, int> e{a, b};
                if (!smaller) {
                    size_t idx = candidate.size();
                    if (idx >= best.size() || best[idx] < e) {
                        viable = false;
                        break;
                    }
                    if (e < best[idx]) smaller = true;
                }
                candidate.push_back(e);
            }
        }
        if (viable && candidate < best) best = candidate;
    } while (std::next_permutation(tail.begin(), tail.end()));

    std::vector<int> labels(k);
    std::iota(labels.begin(), labels.end(), 0);
    return Flag(Graph(v, best), labels, norm.type());
}

bool flag_isomorphic(const Flag& a, const Flag& b) {
    if (a.type() != b.type())
        throw std::invalid_argument("flag_isomorphic: mismatched types");
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.graph().edge_count() != b.graph().edge_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

std::vector<Flag> enumerate_flags(const TypeGraph& tau, int n, int cap) {
    if (cap > Graph::kMaxEnumeration) cap = Graph::kMaxEnumeration;
    int k = tau.size();
    if (n < k)
        throw std::invalid_argument("enumerate_flags: n=" + std::to_string(n) +
                                    " below type size " + std::to_string(k));
    if (n > cap)
        throw std::invalid_argument("enumerate_flags: n=" + std::to_string(n) +
                                    " above cap " + std::to_string(cap));
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Flag> current{Flag(tau.graph(), id, tau)};
    for (int size = k + 1; size <= n; ++size) {
        std::set<Flag> classes;
        for (const Flag& f : current) {
            auto base_edges = f.graph().edges();
            for (uint32_t mask = 0; mask < (1u << (size - 1)); ++mask) {
                auto edges = base_edges;
                for (int v = 0; v < size - 1; ++v)
                    if ((mask >> v) & 1u) edges.emplace_back(v, size - 1);
                classes.insert(canonical_form(Flag(Graph(size, edges), id, tau)));
            }
        }
        current.assign(classes.begin(), classes.end());
    }
    return current;
}

Rational labelling_probability(const Flag& f) {
    const Flag canon = canonical_form(f);
    const Graph& g = f.graph();
    int v = g.vertex_count(), k = f.label_count();
    long total = 0, hits = 0;
    std::vector<int> theta(k);
    std::vector<bool> used(v, false);
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            ++total;
            if (is_embedding(f.type(), theta, g) &&
                canonical_form(Flag(g, theta, f.type())) == canon)
                ++hits;
            return;
        }
        for (int u = 0; u < v; ++u) {
            if (used[u]) continue;
            used[u] = true;
            theta[depth] = u;
            self(self, depth + 1);
            used[u] = false;
        }
    };
    recurse(recurse, 0);
    return Rational(hits, total);
}

}  // namespace flagcalc
