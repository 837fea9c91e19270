#pragma once

#include <string_view>
#include <vector>

#include "flagcalc/expr.hpp"

namespace flagcalc {

ExprPtr parse_expr(std::string_view text);
AssertionPtr parse_assertion(std::string_view text);

// Surface form of a single comparison, before desugaring; used by the
// certificate machinery to recognize supported target shapes.
struct ParsedComparison {
    enum class Op { Geq, Leq, Eq, Lt, Gt };
    Op op = Op::Geq;
    ExprPtr lhs, rhs;
};

// `cmp (& cmp)* => cmp` or a bare `cmp`.
struct ParsedTarget {
    std::vector<ParsedComparison> assumptions;  // empty when there is no antecedent
    ParsedComparison consequent;
};

ParsedTarget parse_target_shape(std::string_view text);

}  // namespace flagcalc
