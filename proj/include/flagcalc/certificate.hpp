#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flagcalc/expr.hpp"
#include "flagcalc/flag.hpp"
#include "flagcalc/graph.hpp"
#include "flagcalc/linear_form.hpp"
#include "flagcalc/parser.hpp"
#include "flagcalc/rational.hpp"

#include "json.hpp"

namespace flagcalc {

// One quadratic form over a flag basis, applied with a nonnegative
// multiplier.
struct CertificateBlock {
    TypeGraph type;
    std::vector<Flag> flags;
    std::vector<std::vector<Rational>> q;
    Rational lambda;
};

// Coefficient erasure justified by a forbidden graph having density zero.
struct Assumption {
    Graph forbidden;
    std::map<CanonicalGraph, Rational> mu;
};

// A machine-checkable proof object for a density bound.
struct Certificate {
    std::string target;
    int level = 0;
    std::vector<CertificateBlock> blocks;
    std::map<CanonicalGraph, Rational> slack;
    std::vector<Assumption> assumptions;

    static Certificate from_json(const nlohmann::json& j);
    static Certificate parse(std::string_view text);
    nlohmann::ordered_json to_json() const;
};

// The two supported target shapes: an optional conjunction of
// (forbidden graph = 0) assumptions implying E <= c, or a linear bound
// E >= c / E <= c with a constant right-hand side.
struct TargetShape {
    std::vector<Graph> forbidden;
    ExprPtr bound_expr;
    Rational bound;
    bool upper = true;  // E <= c when true, E >= c when false
};

TargetShape recognize_target(const ParsedTarget& parsed);
TargetShape parse_target(std::string_view text);
std::string target_to_string(const TargetShape& target);
AssertionPtr target_to_assertion(const TargetShape& target);

struct TraceStep {
    std::string kind;
    std::string detail;
};

// Verification outcome: the residual is the verified identity's nonnegative
// slack over the level-n basis.
struct Verdict {
    bool accepted = false;
    LinearForm residual;
    std::vector<TraceStep> trace;
    std::string message;
};

}  // namespace flagcalc
