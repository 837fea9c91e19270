#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flagcalc/graph.hpp"
#include "flagcalc/rational.hpp"

namespace flagcalc {

// A type: a concrete graph on vertices 0..k-1 serving as the shared labelled
// core of flags. Two types are equal only if their edge sets coincide exactly.
class TypeGraph {
public:
    TypeGraph() = default;  // the size-0 type; flags over it behave like plain graphs
    explicit TypeGraph(Graph g) : g_(std::move(g)) {}

    int size() const { return g_.vertex_count(); }
    const Graph& graph() const { return g_; }

    static TypeGraph parse(std::string_view text);  // t:<k>:{...}
    std::string str() const;

    bool operator==(const TypeGraph& o) const { return g_ == o.g_; }
    bool operator!=(const TypeGraph& o) const { return !(*this == o); }
    bool operator<(const TypeGraph& o) const;

private:
    Graph g_;
};

// theta must map 0..k-1 injectively into the vertices of g and be an
// embedding of tau (edges and non-edges both preserved).
bool is_embedding(const TypeGraph& tau, const std::vector<int>& theta, const Graph& g);

// A labelled graph: a graph together with a distinguished embedding of a type.
class Flag {
public:
    Flag(Graph g, std::vector<int> labels, TypeGraph tau);  // validates the embedding

    const Graph& graph() const { return g_; }
    const TypeGraph& type() const { return tau_; }
    const std::vector<int>& labels() const { return labels_; }  // labels[i] = vertex carrying label i
    int label_count() const { return static_cast<int>(labels_.size()); }
    int vertex_count() const { return g_.vertex_count(); }

    // f:<n>:{edges}|t:<k>:{type-edges}|theta:<1-based label vertices>
    static Flag parse(std::string_view text);
    std::string str() const;

    bool operator==(const Flag& o) const {
        return g_ == o.g_ && labels_ == o.labels_ && tau_ == o.tau_;
    }
    bool operator!=(const Flag& o) const { return !(*this == o); }
    bool operator<(const Flag& o) const;

private:
    Graph g_;
    std::vector<int> labels_;
    TypeGraph tau_;
};

// Representative of the label-preserving isomorphism class: labels moved to
// vertices 0..k-1 in label order, remaining edge list minimized over
// relabellings of the unlabelled vertices.
Flag canonical_form(const Flag& f);

// Label-preserving isomorphism; both flags must have the same type.
bool flag_isomorphic(const Flag& a, const Flag& b);

// One representative per class of flags on n vertices, deterministic order.
std::vector<Flag> enumerate_flags(const TypeGraph& tau, int n, int cap = 7);

// Probability that a uniformly random injection of the type's vertices into
// the flag's host graph is an embedding yielding a flag isomorphic to f.
Rational labelling_probability(const Flag& f);

}  // namespace flagcalc
