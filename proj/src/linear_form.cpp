#include "flagcalc/linear_form.hpp"

#include <algorithm>
#include <stdexcept>

#include "flagcalc/density.hpp"

namespace flagcalc {

bool LinearForm::is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(),
                       [](const Rational& r) { return r.is_zero(); });
}

LinearForm LinearForm::zero(int level, std::optional<TypeGraph> type) {
    LinearForm form;
    form.level = level;
    form.type = std::move(type);
    size_t dim = form.labelled()
                     ? enumerate_flags(*form.type, level, Graph::kMaxEnumeration).size()
                     : enumerate_graphs(level, Graph::kMaxEnumeration).size();
    form.coefficients.assign(dim, Rational(0));
    return form;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    if (level != o.level || type != o.type)
        throw std::invalid_argument("linear form: basis mismatch in addition");
    for (size_t i = 0; i < coefficients.size(); ++i) coefficients[i] += o.coefficients[i];
    return *this;
}

LinearForm LinearForm::scaled(const Rational& r) const {
    LinearForm result = *this;
    for (Rational& c : result.coefficients) c *= r;
    return result;
}

bool LinearForm::operator==(const LinearForm& o) const {
    return level == o.level && type == o.type && coefficients == o.coefficients;
}

std::vector<CanonicalGraph> basis_graphs(const LinearForm& form) {
    if (form.labelled()) throw std::invalid_argument("basis_graphs: form is labelled");
    return enumerate_graphs(form.level, Graph::kMaxEnumeration);
}

std::vector<Flag> basis_flags(const LinearForm& form) {
    if (!form.labelled()) throw std::invalid_argument("basis_flags: form is unlabelled");
    return enumerate_flags(*form.type, form.level, Graph::kMaxEnumeration);
}

size_t basis_index(const Graph& g, int level) {
    if (g.vertex_count() != level)
        throw std::invalid_argument("basis_index: graph size differs from level");
    auto basis = enumerate_graphs(level, Graph::kMaxEnumeration);
    CanonicalGraph canon = canonical_form(g);
    auto it = std::lower_bound(basis.begin(), basis.end(), canon);
    if (it == basis.end() || !(*it == canon))
        throw std::logic_error("basis_index: canonical graph missing from basis");
    return static_cast<size_t>(it - basis.begin());
}

namespace {

std::string term(const Rational& coeff, const std::string& atom, bool first) {
    Rational a = coeff.abs();
    std::string sign = coeff.is_negative() ? (first ? "-" : " - ") : (first ? "" : " + ");
    std::string magnitude = (a == Rational(1)) ? atom : a.str() + "*" + atom;
    return sign + magnitude;
}

}  // namespace

std::string form_to_string(const LinearForm& form) {
    std::vector<std::string> atoms;
    if (form.labelled())
        for (const Flag& f : basis_flags(form)) atoms.push_back(f.str());
    else
        for (const CanonicalGraph& g : basis_graphs(form)) atoms.push_back(g.str());
    std::string out;
    for (size_t i = 0; i < form.coefficients.size(); ++i) {
        if (form.coefficients[i].is_zero()) continue;
        out += term(form.coefficients[i], atoms[i], out.empty());
    }
    return out.empty() ? "0" : out;
}

nlohmann::ordered_json form_to_json(const LinearForm& form) {
    nlohmann::ordered_json j;
    j["level"] = form.level;
    if (form.labelled())
        j["type"] = form.type->str();
    else
        j["type"] = nullptr;
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    if (form.labelled())
        for (const Flag& f : basis_flags(form)) basis.push_back(f.str());
    else
        for (const CanonicalGraph& g : basis_graphs(form)) basis.push_back(g.str());
    for (const Rational& c : form.coefficients) coeffs.push_back(c.str());
    j["basis"] = std::move(basis);
    j["coeffs"] = std::move(coeffs);
    return j;
}

LinearForm form_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("level") || !j.contains("coeffs"))
        throw std::invalid_argument("linear form json: expected {level, type, basis, coeffs}");
    int level = j.at("level").get<int>();
    std::optional<TypeGraph> type;
    if (j.contains("type") && !j.at("type").is_null())
        type = TypeGraph::parse(j.at("type").get<std::string>());
    LinearForm form = LinearForm::zero(level, type);
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != form.coefficients.size())
        throw std::invalid_argument("linear form json: coefficient count does not match basis");
    if (j.contains("basis")) {
        std::vector<std::string> expected;
        if (form.labelled())
            for (const Flag& f : basis_flags(form)) expected.push_back(f.str());
        else
            for (const CanonicalGraph& g : basis_graphs(form)) expected.push_back(g.str());
        const auto& given = j.at("basis");
        if (!given.is_array() || given.size() != expected.size())
            throw std::invalid_argument("linear form json: basis does not match level");
        for (size_t i = 0; i < expected.size(); ++i)
            if (given[i].get<std::string>() != expected[i])
                throw std::invalid_argument("linear form json: basis entry " + std::to_string(i) +
                                            " is not the canonical one (" + expected[i] + ")");
    }
    for (size_t i = 0; i < form.coefficients.size(); ++i)
        form.coefficients[i] = Rational::parse(coeffs[i].get<std::string>());
    return form;
}

Rational eval_form_on_host(const LinearForm& form, const Graph& host) {
    if (form.labelled()) throw std::invalid_argument("eval_form_on_host: form is labelled");
    LinearForm profile = density_profile(host, form.level);
    Rational total(0);
    for (size_t i = 0; i < form.coefficients.size(); ++i)
        total += form.coefficients[i] * profile.coefficients[i];
    return total;
}

Rational eval_form_on_flag(const LinearForm& form, const Flag& host) {
    if (!form.labelled()) throw std::invalid_argument("eval_form_on_flag: form is unlabelled");
    if (*form.type != host.type())
        throw std::invalid_argument("eval_form_on_flag: mismatched types");
    LinearForm profile = density_profile(host, form.level);
    Rational total(0);
    for (size_t i = 0; i < form.coefficients.size(); ++i)
        total += form.coefficients[i] * profile.coefficients[i];
    return total;
}

}  // namespace flagcalc
