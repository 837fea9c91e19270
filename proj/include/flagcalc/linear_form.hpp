#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagcalc/flag.hpp"
#include "flagcalc/graph.hpp"
#include "flagcalc/rational.hpp"

#include "json.hpp"

namespace flagcalc {

// A finite rational-weighted sum over the canonical graph (or flag) basis at
// a fixed level. Coefficients are indexed by the deterministic basis order of
// enumerate_graphs(level) / enumerate_flags(type, level).
struct LinearForm {
    int level = 0;
    std::optional<TypeGraph> type;  // nullopt = unlabelled
    std::vector<Rational> coefficients;

    bool labelled() const { return type.has_value(); }
    bool is_zero() const;

    static LinearForm zero(int level, std::optional<TypeGraph> type = std::nullopt);

    LinearForm& operator+=(const LinearForm& o);  // requires same basis
    LinearForm scaled(const Rational& r) const;

    bool operator==(const LinearForm& o) const;
    bool operator!=(const LinearForm& o) const { return !(*this == o); }
};

std::vector<CanonicalGraph> basis_graphs(const LinearForm& form);
std::vector<Flag> basis_flags(const LinearForm& form);

// Index of a graph (canonicalized first) in the level-n basis.
size_t basis_index(const Graph& g, int level);

// Inline rendering "c1*g:... + c2*g:..." with zero terms omitted.
std::string form_to_string(const LinearForm& form);

nlohmann::ordered_json form_to_json(const LinearForm& form);
LinearForm form_from_json(const nlohmann::json& j);

// Pairing of a form with a host: sum of coefficient times density of the
// basis element in the host.
Rational eval_form_on_host(const LinearForm& form, const Graph& host);
Rational eval_form_on_flag(const LinearForm& form, const Flag& host);

}  // namespace flagcalc
