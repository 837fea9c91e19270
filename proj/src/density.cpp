#include "flagcalc/density.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace flagcalc {

namespace {

// Iterates over all size-m subsets of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int m, Fn&& fn) {
    if (m < 0 || m > n) return;
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = m - 1;
        while (i >= 0 && idx[i] == n - m + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Packs the induced subgraph of `host` on the (sorted) subset into a bitmask
// over local pairs; used as a memo key so each induced isomorphism type is
// canonicalized once per counting sweep.
uint32_t induced_mask(const Graph& host, const std::vector<int>& subset) {
    uint32_t mask = 0;
    int bit = 0;
    for (size_t i = 0; i < subset.size(); ++i)
        for (size_t j = i + 1; j < subset.size(); ++j, ++bit)
            if (host.has_edge(subset[i], subset[j])) mask |= 1u << bit;
    return mask;
}

Graph graph_from_mask(int m, uint32_t mask) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j, ++bit)
            if ((mask >> bit) & 1u) edges.emplace_back(i, j);
    return Graph(m, edges);
}

// Match-cache for "does this subset induce a copy of the pattern".
class PatternMatcher {
public:
    PatternMatcher(const Graph& pattern, const Graph& host)
        : host_(host), size_(pattern.vertex_count()), canon_(canonical_form(pattern)) {}

    bool matches(const std::vector<int>& subset) {
        uint32_t key = induced_mask(host_, subset);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        bool hit = canonical_form(graph_from_mask(size_, key)) == canon_;
        cache_.emplace(key, hit);
        return hit;
    }

private:
    const Graph& host_;
    int size_;
    CanonicalGraph canon_;
    std::unordered_map<uint32_t, bool> cache_;
};

// The induced flag of a host flag on the labelled vertices plus a subset of
// unlabelled ones.
Flag induced_flag(const Flag& host, const std::vector<int>& extra) {
    std::vector<int> vertices = host.labels();
    vertices.insert(vertices.end(), extra.begin(), extra.end());
    std::sort(vertices.begin(), vertices.end());
    std::vector<int> position(host.vertex_count(), -1);
    for (size_t i = 0; i < vertices.size(); ++i) position[vertices[i]] = static_cast<int>(i);
    std::vector<int> labels;
    for (int v : host.labels()) labels.push_back(position[v]);
    return Flag(host.graph().induced(vertices), labels, host.type());
}

// The unlabelled vertices of a host flag.
std::vector<int> free_vertices(const Flag& host) {
    std::vector<bool> labelled(host.vertex_count(), false);
    for (int v : host.labels()) labelled[v] = true;
    std::vector<int> result;
    for (int v = 0; v < host.vertex_count(); ++v)
        if (!labelled[v]) result.push_back(v);
    return result;
}

class FlagMatcher {
public:
    FlagMatcher(const Flag& pattern, const Flag& host)
        : host_(host), canon_(canonical_form(pattern)) {}

    bool matches(const std::vector<int>& extra) {
        return canonical_form(induced_flag(host_, extra)) == canon_;
    }

private:
    const Flag& host_;
    Flag canon_;
};

}  // namespace

Rational density(const Graph& pattern, const Graph& host) {
    int m = pattern.vertex_count(), n = host.vertex_count();
    if (m > n) return Rational(0);
    long long total = binomial(n, m), hits = 0;
    PatternMatcher matcher(pattern, host);
    for_each_subset(n, m, [&](const std::vector<int>& subset) {
        if (matcher.matches(subset)) ++hits;
    });
    return Rational(static_cast<long>(hits), static_cast<long>(total));
}

Rational labelled_density(const Flag& pattern, const Flag& host) {
    if (pattern.type() != host.type())
        throw std::invalid_argument("labelled_density: mismatched types");
    if (pattern.vertex_count() > host.vertex_count()) return Rational(0);
    int m = pattern.vertex_count() - pattern.label_count();
    std::vector<int> free = free_vertices(host);
    long long total = binomial(static_cast<int>(free.size()), m), hits = 0;
    FlagMatcher matcher(pattern, host);
    for_each_subset(static_cast<int>(free.size()), m, [&](const std::vector<int>& idx) {
        std::vector<int> extra;
        for (int i : idx) extra.push_back(free[i]);
        if (matcher.matches(extra)) ++hits;
    });
    return Rational(static_cast<long>(hits), static_cast<long>(total));
}

Rational split_density(const Graph& h1, const Graph& h2, const Graph& host) {
    int v1 = h1.vertex_count(), v2 = h2.vertex_count(), n = host.vertex_count();
    if (v1 + v2 > n)
        throw std::invalid_argument("split_density: patterns do not fit in the host");
    PatternMatcher matcher1(h1, host), matcher2(h2, host);
    long long total = binomial(n, v1) * binomial(n - v1, v2), hits = 0;
    for_each_subset(n, v1, [&](const std::vector<int>& first) {
        if (!matcher1.matches(first)) return;
        std::vector<int> rest;
        std::vector<bool> used(n, false);
        for (int v : first) used[v] = true;
        for (int v = 0; v < n; ++v)
            if (!used[v]) rest.push_back(v);
        for_each_subset(static_cast<int>(rest.size()), v2, [&](const std::vector<int>& idx) {
            std::vector<int> second;
            for (int i : idx) second.push_back(rest[i]);
            if (matcher2.matches(second)) ++hits;
        });
    });
    return Rational(static_cast<long>(hits), static_cast<long>(total));
}

Rational labelled_split_density(const Flag& h1, const Flag& h2, const Flag& host) {
    if (h1.type() != host.type() || h2.type() != host.type())
        throw std::invalid_argument("labelled_split_density: mismatched types");
    int k = host.label_count();
    int m1 = h1.vertex_count() - k, m2 = h2.vertex_count() - k;
    if (h1.vertex_count() + h2.vertex_count() - k > host.vertex_count())
        throw std::invalid_argument("labelled_split_density: patterns do not fit in the host");
    std::vector<int> free = free_vertices(host);
    int u = static_cast<int>(free.size());
    FlagMatcher matcher1(h1, host), matcher2(h2, host);
    long long total = binomial(u, m1) * binomial(u - m1, m2), hits = 0;
    for_each_subset(u, m1, [&](const std::vector<int>& idx1) {
        std::vector<int> first;
        for (int i : idx1) first.push_back(free[i]);
        if (!matcher1.matches(first)) return;
        std::vector<int> rest;
        std::vector<bool> used(host.vertex_count(), false);
        for (int v : first) used[v] = true;
        for (int v : free)
            if (!used[v]) rest.push_back(v);
        for_each_subset(static_cast<int>(rest.size()), m2, [&](const std::vector<int>& idx2) {
            std::vector<int> second;
            for (int i : idx2) second.push_back(rest[i]);
            if (matcher2.matches(second)) ++hits;
        });
    });
    return Rational(static_cast<long>(hits), static_cast<long>(total));
}

LinearForm chain_decompose(const Graph& pattern, int level) {
    if (pattern.vertex_count() > level)
        throw std::invalid_argument("chain_decompose: pattern larger than level");
    auto basis = enumerate_graphs(level, Graph::kMaxEnumeration);
    LinearForm form = LinearForm::zero(level);
    for (size_t i = 0; i < basis.size(); ++i)
        form.coefficients[i] = density(pattern, basis[i].graph());
    return form;
}

LinearForm chain_decompose(const Flag& pattern, int level) {
    if (pattern.vertex_count() > level)
        throw std::invalid_argument("chain_decompose: pattern larger than level");
    auto basis = enumerate_flags(pattern.type(), level, Graph::kMaxEnumeration);
    LinearForm form = LinearForm::zero(level, pattern.type());
    for (size_t i = 0; i < basis.size(); ++i)
        form.coefficients[i] = labelled_density(pattern, basis[i]);
    return form;
}

LinearForm density_profile(const Graph& host, int level) {
    auto basis = enumerate_graphs(level, Graph::kMaxEnumeration);
    LinearForm form = LinearForm::zero(level);
    int n = host.vertex_count();
    if (level > n) return form;
    std::map<CanonicalGraph, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    std::vector<long long> counts(basis.size(), 0);
    std::unordered_map<uint32_t, size_t> mask_to_index;
    for_each_subset(n, level, [&](const std::vector<int>& subset) {
        uint32_t key = induced_mask(host, subset);
        auto it = mask_to_index.find(key);
        size_t slot;
        if (it != mask_to_index.end()) {
            slot = it->second;
        } else {
            slot = index.at(canonical_form(graph_from_mask(level, key)));
            mask_to_index.emplace(key, slot);
        }
        ++counts[slot];
    });
    long long total = binomial(n, level);
    for (size_t i = 0; i < basis.size(); ++i)
        form.coefficients[i] = Rational(static_cast<long>(counts[i]), static_cast<long>(total));
    return form;
}

LinearForm density_profile(const Flag& host, int level) {
    auto basis = enumerate_flags(host.type(), level, Graph::kMaxEnumeration);
    LinearForm form = LinearForm::zero(level, host.type());
    if (level > host.vertex_count()) return form;
    std::map<Flag, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    std::vector<long long> counts(basis.size(), 0);
    std::vector<int> free = free_vertices(host);
    int m = level - host.label_count();
    for_each_subset(static_cast<int>(free.size()), m, [&](const std::vector<int>& idx) {
        std::vector<int> extra;
        for (int i : idx) extra.push_back(free[i]);
        ++counts[index.at(canonical_form(induced_flag(host, extra)))];
    });
    long long total = binomial(static_cast<int>(free.size()), m);
    for (size_t i = 0; i < basis.size(); ++i)
        form.coefficients[i] = Rational(static_cast<long>(counts[i]), static_cast<long>(total));
    return form;
}

}  // namespace flagcalc
