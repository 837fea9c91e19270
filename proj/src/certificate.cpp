#include "flagcalc/certificate.hpp"

#include <optional>
#include <stdexcept>

namespace flagcalc {

namespace {

std::map<CanonicalGraph, Rational> weights_from_json(const nlohmann::json& j,
                                                     const char* what) {
    std::map<CanonicalGraph, Rational> weights;
    if (!j.is_object())
        throw std::invalid_argument(std::string("certificate: ") + what + " must be an object");
    for (const auto& [key, value] : j.items()) {
        CanonicalGraph g = canonical_form(Graph::parse(key));
        if (!weights.emplace(g, Rational::parse(value.get<std::string>())).second)
            throw std::invalid_argument(std::string("certificate: duplicate ") + what +
                                        " entry for " + g.str());
    }
    return weights;
}

nlohmann::ordered_json weights_to_json(const std::map<CanonicalGraph, Rational>& weights) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [g, r] : weights) j[g.str()] = r.str();
    return j;
}

}  // namespace

Certificate Certificate::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("target") || !j.contains("level"))
        throw std::invalid_argument("certificate: expected {target, level, blocks, ...}");
    Certificate cert;
    cert.target = j.at("target").get<std::string>();
    cert.level = j.at("level").get<int>();
    if (j.contains("blocks")) {
        for (const auto& b : j.at("blocks")) {
            CertificateBlock block;
            block.type = TypeGraph::parse(b.at("type").get<std::string>());
            for (const auto& f : b.at("flags"))
                block.flags.push_back(Flag::parse(f.get<std::string>()));
            for (const auto& row : b.at("Q")) {
                std::vector<Rational> r;
                for (const auto& entry : row) r.push_back(Rational::parse(entry.get<std::string>()));
                block.q.push_back(std::move(r));
            }
            block.lambda = Rational::parse(b.at("lambda").get<std::string>());
            cert.blocks.push_back(std::move(block));
        }
    }
    if (j.contains("slack")) cert.slack = weights_from_json(j.at("slack"), "slack");
    if (j.contains("assumptions")) {
        for (const auto& a : j.at("assumptions")) {
            Assumption assumption;
            assumption.forbidden = Graph::parse(a.at("forbidden").get<std::string>());
            assumption.mu = weights_from_json(a.at("mu"), "mu");
            cert.assumptions.push_back(std::move(assumption));
        }
    }
    return cert;
}

Certificate Certificate::parse(std::string_view text) {
    return from_json(nlohmann::json::parse(text));
}

nlohmann::ordered_json Certificate::to_json() const {
    nlohmann::ordered_json j;
    j["target"] = target;
    j["level"] = level;
    nlohmann::ordered_json blocks_json = nlohmann::ordered_json::array();
    for (const CertificateBlock& block : blocks) {
        nlohmann::ordered_json b;
        b["type"] = block.type.str();
        nlohmann::ordered_json flags_json = nlohmann::ordered_json::array();
        for (const Flag& f : block.flags) flags_json.push_back(f.str());
        b["flags"] = std::move(flags_json);
        nlohmann::ordered_json q_json = nlohmann::ordered_json::array();
        for (const auto& row : block.q) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const Rational& entry : row) r.push_back(entry.str());
            q_json.push_back(std::move(r));
        }
        b["Q"] = std::move(q_json);
        b["lambda"] = block.lambda.str();
        blocks_json.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks_json);
    j["slack"] = weights_to_json(slack);
    nlohmann::ordered_json assumptions_json = nlohmann::ordered_json::array();
    for (const Assumption& a : assumptions) {
        nlohmann::ordered_json aj;
        aj["forbidden"] = a.forbidden.str();
        aj["mu"] = weights_to_json(a.mu);
        assumptions_json.push_back(std::move(aj));
    }
    j["assumptions"] = std::move(assumptions_json);
    return j;
}

namespace {

// Constant value of an atom-free expression, when it is one.
std::optional<Rational> const_value(const ExprPtr& e) {
    switch (e->kind()) {
        case DensityExpr::Kind::Zero:
            return Rational(0);
        case DensityExpr::Kind::One:
            return Rational(1);
        case DensityExpr::Kind::Constant:
            return e->value();
        case DensityExpr::Kind::Scale: {
            auto v = const_value(e->child());
            if (!v) return std::nullopt;
            return e->value() * *v;
        }
        case DensityExpr::Kind::Add: {
            auto a = const_value(e->lhs()), b = const_value(e->rhs());
            if (!a || !b) return std::nullopt;
            return *a + *b;
        }
        case DensityExpr::Kind::Mul: {
            auto a = const_value(e->lhs()), b = const_value(e->rhs());
            if (!a || !b) return std::nullopt;
            return *a * *b;
        }
        case DensityExpr::Kind::GraphAtom:
        case DensityExpr::Kind::FlagAtom:
            return std::nullopt;
    }
    return std::nullopt;
}

Graph forbidden_graph(const ParsedComparison& cmp) {
    auto graph_side = [](const ExprPtr& e) -> std::optional<Graph> {
        if (e->kind() == DensityExpr::Kind::GraphAtom) return e->graph();
        return std::nullopt;
    };
    std::optional<Graph> g = graph_side(cmp.lhs);
    std::optional<Rational> c = const_value(cmp.rhs);
    if (!g) {
        g = graph_side(cmp.rhs);
        c = const_value(cmp.lhs);
    }
    if (cmp.op != ParsedComparison::Op::Eq || !g || !c || !c->is_zero())
        throw std::invalid_argument(
            "target: assumptions must be of the shape <graph> = 0");
    return *g;
}

}  // namespace

TargetShape recognize_target(const ParsedTarget& parsed) {
    TargetShape target;
    for (const ParsedComparison& cmp : parsed.assumptions)
        target.forbidden.push_back(forbidden_graph(cmp));

    const ParsedComparison& cmp = parsed.consequent;
    if (cmp.op != ParsedComparison::Op::Leq && cmp.op != ParsedComparison::Op::Geq)
        throw std::invalid_argument("target: bound must use <= or >=");
    bool le = cmp.op == ParsedComparison::Op::Leq;
    if (auto c = const_value(cmp.rhs)) {
        target.bound_expr = cmp.lhs;
        target.bound = *c;
        target.upper = le;
    } else if (auto c2 = const_value(cmp.lhs)) {
        target.bound_expr = cmp.rhs;
        target.bound = *c2;
        target.upper = !le;
    } else {
        throw std::invalid_argument("target: one side of the bound must be a constant");
    }
    if (target.bound_expr->flag_type())
        throw std::invalid_argument("target: the bounded expression must be unlabelled");
    return target;
}

TargetShape parse_target(std::string_view text) {
    return recognize_target(parse_target_shape(text));
}

std::string target_to_string(const TargetShape& target) {
    std::string out;
    for (size_t i = 0; i < target.forbidden.size(); ++i) {
        if (i) out += " & ";
        out += target.forbidden[i].str() + " = 0";
    }
    if (!target.forbidden.empty()) out += " => ";
    out += expr_to_string(target.bound_expr);
    out += target.upper ? " <= " : " >= ";
    out += target.bound.str();
    return out;
}

AssertionPtr target_to_assertion(const TargetShape& target) {
    ExprPtr bound = DensityExpr::constant(target.bound);
    AssertionPtr consequent = target.upper ? Assertion::leq(target.bound_expr, bound)
                                           : Assertion::geq(target.bound_expr, bound);
    if (target.forbidden.empty()) return consequent;
    AssertionPtr antecedent;
    for (const Graph& f : target.forbidden) {
        AssertionPtr eq = Assertion::equals(DensityExpr::graph_atom(f), DensityExpr::zero());
        antecedent = antecedent ? Assertion::conjunction(antecedent, eq) : eq;
    }
    return Assertion::implication(antecedent, consequent);
}

}  // namespace flagcalc
