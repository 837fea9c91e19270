#include "flagcalc/graphon.hpp"

#include <stdexcept>

namespace flagcalc {

StepGraphon::StepGraphon(std::vector<Rational> weights,
                         std::vector<std::vector<Rational>> edge_probabilities)
    : weights_(std::move(weights)), probs_(std::move(edge_probabilities)) {
    if (weights_.empty()) throw std::invalid_argument("graphon: needs at least one part");
    Rational sum(0);
    for (const Rational& w : weights_) {
        if (!w.is_positive()) throw std::invalid_argument("graphon: part weights must be positive");
        sum += w;
    }
    if (sum != Rational(1)) throw std::invalid_argument("graphon: part weights must sum to 1");
    size_t n = weights_.size();
    if (probs_.size() != n) throw std::invalid_argument("graphon: matrix size mismatch");
    for (size_t i = 0; i < n; ++i) {
        if (probs_[i].size() != n) throw std::invalid_argument("graphon: matrix size mismatch");
        for (size_t j = 0; j < n; ++j) {
            if (probs_[i][j].is_negative() || probs_[i][j] > Rational(1))
                throw std::invalid_argument("graphon: edge probabilities must lie in [0,1]");
            if (probs_[i][j] != probs_[j][i])
                throw std::invalid_argument("graphon: matrix must be symmetric");
        }
    }
}

StepGraphon StepGraphon::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("matrix"))
        throw std::invalid_argument("graphon json: expected {weights, matrix}");
    std::vector<Rational> weights;
    for (const auto& w : j.at("weights")) weights.push_back(Rational::parse(w.get<std::string>()));
    std::vector<std::vector<Rational>> probs;
    for (const auto& row : j.at("matrix")) {
        std::vector<Rational> r;
        for (const auto& entry : row) r.push_back(Rational::parse(entry.get<std::string>()));
        probs.push_back(std::move(r));
    }
    return StepGraphon(std::move(weights), std::move(probs));
}

StepGraphon StepGraphon::parse(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, true);
    return from_json(j);
}

nlohmann::ordered_json StepGraphon::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json weights = nlohmann::ordered_json::array();
    for (const Rational& w : weights_) weights.push_back(w.str());
    nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
    for (const auto& row : probs_) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const Rational& p : row) r.push_back(p.str());
        matrix.push_back(std::move(r));
    }
    j["weights"] = std::move(weights);
    j["matrix"] = std::move(matrix);
    return j;
}

StepGraphon StepGraphon::uniform(const Rational& p) {
    return StepGraphon({Rational(1)}, {{p}});
}

StepGraphon StepGraphon::complete_bipartite() {
    Rational half(1, 2);
    return StepGraphon({half, half}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
}

Rational graphon_density(const Graph& pattern, const StepGraphon& w) {
    int v = pattern.vertex_count();
    int parts = w.part_count();
    if (v == 0) return Rational(1);
    // Sum over assignments of pattern vertices to parts of the probability
    // that sampled points realize the pattern's edges and non-edges exactly.
    Rational labelled_total(0);
    std::vector<int> assign(v, 0);
    while (true) {
        Rational term(1);
        for (int i = 0; i < v && !term.is_zero(); ++i) term *= w.weight(assign[i]);
        for (int i = 0; i < v && !term.is_zero(); ++i)
            for (int j = i + 1; j < v; ++j) {
                const Rational& p = w.edge_probability(assign[i], assign[j]);
                term *= pattern.has_edge(i, j) ? p : Rational(1) - p;
                if (term.is_zero()) break;
            }
        labelled_total += term;
        int pos = v - 1;
        while (pos >= 0 && assign[pos] == parts - 1) assign[pos--] = 0;
        if (pos < 0) break;
        ++assign[pos];
    }
    // Each unordered copy corresponds to v!/|Aut| labelled ones.
    long fact = 1;
    for (int i = 2; i <= v; ++i) fact *= i;
    return labelled_total * Rational(fact, automorphism_count(pattern));
}

}  // namespace flagcalc
