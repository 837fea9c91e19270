#include "flagcalc/downward.hpp"

#include <stdexcept>

#include "flagcalc/density.hpp"

namespace flagcalc {

GraphMeasure downward_measure(const Flag& f) {
    // Single entry: the flag's own labelling always witnesses q > 0.
    GraphMeasure measure;
    measure.emplace(canonical_form(f.graph()), labelling_probability(f));
    return measure;
}

LinearForm downward_transfer(const LinearForm& labelled) {
    if (!labelled.labelled())
        throw std::invalid_argument("downward_transfer: form is already unlabelled");
    LinearForm result = LinearForm::zero(labelled.level);
    auto flags = basis_flags(labelled);
    for (size_t i = 0; i < flags.size(); ++i) {
        if (labelled.coefficients[i].is_zero()) continue;
        Rational weight = labelled.coefficients[i] * labelling_probability(flags[i]);
        result.coefficients[basis_index(flags[i].graph(), labelled.level)] += weight;
    }
    return result;
}

namespace {

// All embeddings of the type into the host, as ordered injections.
std::vector<std::vector<int>> type_embeddings(const TypeGraph& tau, const Graph& host) {
    int k = tau.size(), n = host.vertex_count();
    std::vector<std::vector<int>> result;
    std::vector<int> theta(k);
    std::vector<bool> used(n, false);
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            if (is_embedding(tau, theta, host)) result.push_back(theta);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            theta[depth] = v;
            self(self, depth + 1);
            used[v] = false;
        }
    };
    recurse(recurse, 0);
    return result;
}

}  // namespace

Rational label_averaged_density(const Flag& pattern, const Graph& host) {
    const TypeGraph& tau = pattern.type();
    auto embeddings = type_embeddings(tau, host);
    if (embeddings.empty()) return Rational(0);

    std::vector<int> id(tau.size());
    for (int i = 0; i < tau.size(); ++i) id[i] = i;
    Rational type_weight = labelling_probability(Flag(tau.graph(), id, tau));
    Rational type_density = density(tau.graph(), host);

    Rational sum(0);
    for (const auto& theta : embeddings)
        sum += labelled_density(pattern, Flag(host, theta, tau));
    Rational average = sum / Rational(static_cast<long>(embeddings.size()), 1);
    return type_weight * type_density * average;
}

bool check_adjointness(const Flag& pattern, const Graph& host) {
    Rational lhs = labelling_probability(pattern) * density(pattern.graph(), host);
    return lhs == label_averaged_density(pattern, host);
}

}  // namespace flagcalc
