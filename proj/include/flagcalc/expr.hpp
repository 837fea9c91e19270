#pragma once

#include <memory>
#include <optional>
#include <string>

#include "flagcalc/flag.hpp"
#include "flagcalc/graph.hpp"
#include "flagcalc/graphon.hpp"
#include "flagcalc/linear_form.hpp"
#include "flagcalc/rational.hpp"

namespace flagcalc {

class DensityExpr;
using ExprPtr = std::shared_ptr<const DensityExpr>;

// Immutable density-expression tree. Atoms are graphs or flags; an
// expression may not mix unlabelled atoms with flags, and all flags must
// share one type (checked at construction).
class DensityExpr {
public:
    enum class Kind { GraphAtom, FlagAtom, Zero, One, Constant, Scale, Add, Mul };

    static ExprPtr graph_atom(Graph g);
    static ExprPtr flag_atom(Flag f);
    static ExprPtr zero();
    static ExprPtr one();
    static ExprPtr constant(Rational r);
    static ExprPtr scale(Rational r, ExprPtr e);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr negate(ExprPtr e) { return scale(Rational(-1), std::move(e)); }
    static ExprPtr subtract(ExprPtr a, ExprPtr b) { return add(std::move(a), negate(std::move(b))); }

    Kind kind() const { return kind_; }
    const Graph& graph() const { return *graph_; }
    const Flag& flag() const { return *flag_; }
    const Rational& value() const { return value_; }
    const ExprPtr& child() const { return lhs_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }

    // Type of the flag atoms, if any.
    const std::optional<TypeGraph>& flag_type() const { return flag_type_; }
    bool has_unlabelled_atoms() const { return has_unlabelled_atoms_; }

private:
    DensityExpr(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::optional<Graph> graph_;
    std::optional<Flag> flag_;
    Rational value_;
    ExprPtr lhs_, rhs_;
    std::optional<TypeGraph> flag_type_;
    bool has_unlabelled_atoms_ = false;
};

// Smallest level the expression can be flattened to (over the basis selected
// by force_type, for expressions without atoms).
int min_level(const ExprPtr& e, const std::optional<TypeGraph>& force_type = std::nullopt);

// Structural evaluation with atoms read as induced densities in the host.
// The expression must be unlabelled.
Rational eval_on_host(const ExprPtr& e, const Graph& host);

// Structural evaluation against the step-graphon limit object. Exact; the
// graphon semantics is a true algebra homomorphism, so products multiply.
Rational eval_on_graphon(const ExprPtr& e, const StepGraphon& w);

std::string expr_to_string(const ExprPtr& e);

// Flattening: products eliminated innermost-out (left to right), the
// constant 1 replaced by the empty graph (or the type flag), atoms
// canonicalized, everything lifted to the requested level.
LinearForm to_linear_form(const ExprPtr& e, int level,
                          std::optional<TypeGraph> force_type = std::nullopt);

// Flattens to the smallest feasible level.
LinearForm to_linear_form(const ExprPtr& e);

// Re-expresses a form over the larger basis via the exact chain rule.
LinearForm lift_form(const LinearForm& form, int level);

// Eliminates the product of two forms over the joint basis.
LinearForm product_form(const LinearForm& a, const LinearForm& b);

// Reads a form back as a sum of scaled atoms.
ExprPtr form_to_expr(const LinearForm& form);

// Assertions ----------------------------------------------------------------

class Assertion;
using AssertionPtr = std::shared_ptr<const Assertion>;

// Core assertion tree: comparisons, negation, disjunction. The derived
// connectives desugar on construction.
class Assertion {
public:
    enum class Kind { False, True, Geq, Not, Or };

    static AssertionPtr falsum();
    static AssertionPtr verum();
    static AssertionPtr geq(ExprPtr l, ExprPtr r);
    static AssertionPtr negation(AssertionPtr a);
    static AssertionPtr disjunction(AssertionPtr a, AssertionPtr b);

    static AssertionPtr conjunction(AssertionPtr a, AssertionPtr b);
    static AssertionPtr implication(AssertionPtr a, AssertionPtr b);
    static AssertionPtr equals(ExprPtr l, ExprPtr r);
    static AssertionPtr leq(ExprPtr l, ExprPtr r);
    static AssertionPtr lt(ExprPtr l, ExprPtr r);
    static AssertionPtr gt(ExprPtr l, ExprPtr r);

    Kind kind() const { return kind_; }
    const ExprPtr& lhs_expr() const { return lhs_expr_; }
    const ExprPtr& rhs_expr() const { return rhs_expr_; }
    const AssertionPtr& operand() const { return a_; }
    const AssertionPtr& lhs() const { return a_; }
    const AssertionPtr& rhs() const { return b_; }

private:
    Assertion(Kind kind) : kind_(kind) {}

    Kind kind_;
    ExprPtr lhs_expr_, rhs_expr_;
    AssertionPtr a_, b_;
};

bool eval_assertion(const AssertionPtr& a, const Graph& host);
bool eval_assertion(const AssertionPtr& a, const StepGraphon& w);

}  // namespace flagcalc
