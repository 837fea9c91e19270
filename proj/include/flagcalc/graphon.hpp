#pragma once

#include <string_view>
#include <vector>

#include "flagcalc/graph.hpp"
#include "flagcalc/rational.hpp"

#include "json.hpp"

namespace flagcalc {

// A finitely-partitioned symmetric edge-probability kernel. Serves as an
// exactly evaluable limit object: induced densities of any pattern are
// rational and computable by a finite assignment sum.
class StepGraphon {
public:
    StepGraphon(std::vector<Rational> weights,
                std::vector<std::vector<Rational>> edge_probabilities);

    int part_count() const { return static_cast<int>(weights_.size()); }
    const Rational& weight(int part) const { return weights_[part]; }
    const Rational& edge_probability(int a, int b) const { return probs_[a][b]; }

    // { "weights": ["1/2","1/2"], "matrix": [["0","1"],["1","0"]] }
    static StepGraphon from_json(const nlohmann::json& j);
    static StepGraphon parse(std::string_view text);
    nlohmann::ordered_json to_json() const;

    static StepGraphon uniform(const Rational& p);        // one part, constant kernel
    static StepGraphon complete_bipartite();              // two equal parts, cross edges only

private:
    std::vector<Rational> weights_;
    std::vector<std::vector<Rational>> probs_;
};

// Induced density of the pattern in the graphon: the number of labelled
// copies of the pattern per isomorphism class times the labelled embedding
// weight, summed over all part assignments. Exact.
Rational graphon_density(const Graph& pattern, const StepGraphon& w);

}  // namespace flagcalc
