#include "flagcalc/expr.hpp"

#include <algorithm>

#include "flagcalc/density.hpp"
#include "flagcalc/errors.hpp"

namespace flagcalc {

namespace {

// Merges the atom-type information of children; rejects mixed trees.
void merge_types(std::optional<TypeGraph>& type, bool& has_unlabelled,
                 const std::optional<TypeGraph>& other_type, bool other_unlabelled) {
    if (other_type) {
        if (type && *type != *other_type)
            throw TypeError("expression mixes flags of two different types");
        type = other_type;
    }
    has_unlabelled = has_unlabelled || other_unlabelled;
    if (type && has_unlabelled)
        throw TypeError("expression mixes unlabelled atoms with flags");
}

}  // namespace

ExprPtr DensityExpr::graph_atom(Graph g) {
    auto e = std::shared_ptr<DensityExpr>(new DensityExpr(Kind::GraphAtom));
    e->graph_ = std::move(g);
    e->has_unlabelled_atoms_ = true;
    return e;
}

ExprPtr DensityExpr::flag_atom(Flag f) {
    auto e = std::shared_ptr<DensityExpr>(new DensityExpr(Kind::FlagAtom));
    e->flag_type_ = f.type();
    e->flag_ = std::move(f);
    return e;
}

ExprPtr DensityExpr::zero() {
    return std::shared_ptr<DensityExpr>(new DensityExpr(Kind::Zero));
}

ExprPtr DensityExpr::one() {
    return std::shared_ptr<DensityExpr>(new DensityExpr(Kind::One));
}

ExprPtr DensityExpr::constant(Rational r) {
    auto e = std::shared_ptr<DensityExpr>(new DensityExpr(Kind::Constant));
    e->value_ = std::move(r);
    return e;
}

ExprPtr DensityExpr::scale(Rational r, ExprPtr child) {
    auto e = std::shared_ptr<DensityExpr>(new DensityExpr(Kind::Scale));
    e->value_ = std::move(r);
    e->flag_type_ = child->flag_type();
    e->has_unlabelled_atoms_ = child->has_unlabelled_atoms();
    e->lhs_ = std::move(child);
    return e;
}

ExprPtr DensityExpr::add(ExprPtr a, ExprPtr b) {
    auto e = std::shared_ptr<DensityExpr>(new DensityExpr(Kind::Add));
    e->flag_type_ = a->flag_type();
    e->has_unlabelled_atoms_ = a->has_unlabelled_atoms();
    merge_types(e->flag_type_, e->has_unlabelled_atoms_, b->flag_type(), b->has_unlabelled_atoms());
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

ExprPtr DensityExpr::mul(ExprPtr a, ExprPtr b) {
    auto e = std::shared_ptr<DensityExpr>(new DensityExpr(Kind::Mul));
    e->flag_type_ = a->flag_type();
    e->has_unlabelled_atoms_ = a->has_unlabelled_atoms();
    merge_types(e->flag_type_, e->has_unlabelled_atoms_, b->flag_type(), b->has_unlabelled_atoms());
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

namespace {

int min_level_rec(const ExprPtr& e, int type_size) {
    switch (e->kind()) {
        case DensityExpr::Kind::Zero:
        case DensityExpr::Kind::One:
        case DensityExpr::Kind::Constant:
            return type_size;
        case DensityExpr::Kind::GraphAtom:
            return e->graph().vertex_count();
        case DensityExpr::Kind::FlagAtom:
            return e->flag().vertex_count();
        case DensityExpr::Kind::Scale:
            return min_level_rec(e->child(), type_size);
        case DensityExpr::Kind::Add:
            return std::max(min_level_rec(e->lhs(), type_size),
                            min_level_rec(e->rhs(), type_size));
        case DensityExpr::Kind::Mul:
            return min_level_rec(e->lhs(), type_size) + min_level_rec(e->rhs(), type_size) -
                   type_size;
    }
    return 0;
}

std::optional<TypeGraph> resolve_type(const ExprPtr& e,
                                      const std::optional<TypeGraph>& force_type) {
    if (e->flag_type()) {
        if (force_type && *force_type != *e->flag_type())
            throw TypeError("expression flags do not match the requested type");
        return e->flag_type();
    }
    if (force_type) {
        if (e->has_unlabelled_atoms())
            throw TypeError("cannot flatten unlabelled atoms over a labelled basis");
        return force_type;
    }
    return std::nullopt;
}

}  // namespace

int min_level(const ExprPtr& e, const std::optional<TypeGraph>& force_type) {
    auto type = resolve_type(e, force_type);
    return min_level_rec(e, type ? type->size() : 0);
}

Rational eval_on_host(const ExprPtr& e, const Graph& host) {
    if (e->flag_type()) throw TypeError("eval_on_host: expression must be unlabelled");
    switch (e->kind()) {
        case DensityExpr::Kind::GraphAtom:
            return density(e->graph(), host);
        case DensityExpr::Kind::FlagAtom:
            throw TypeError("eval_on_host: expression must be unlabelled");
        case DensityExpr::Kind::Zero:
            return Rational(0);
        case DensityExpr::Kind::One:
            return Rational(1);
        case DensityExpr::Kind::Constant:
            return e->value();
        case DensityExpr::Kind::Scale:
            return e->value() * eval_on_host(e->child(), host);
        case DensityExpr::Kind::Add:
            return eval_on_host(e->lhs(), host) + eval_on_host(e->rhs(), host);
        case DensityExpr::Kind::Mul:
            return eval_on_host(e->lhs(), host) * eval_on_host(e->rhs(), host);
    }
    return Rational(0);
}

Rational eval_on_graphon(const ExprPtr& e, const StepGraphon& w) {
    if (e->flag_type()) throw TypeError("eval_on_graphon: expression must be unlabelled");
    switch (e->kind()) {
        case DensityExpr::Kind::GraphAtom:
            return graphon_density(e->graph(), w);
        case DensityExpr::Kind::FlagAtom:
            throw TypeError("eval_on_graphon: expression must be unlabelled");
        case DensityExpr::Kind::Zero:
            return Rational(0);
        case DensityExpr::Kind::One:
            return Rational(1);
        case DensityExpr::Kind::Constant:
            return e->value();
        case DensityExpr::Kind::Scale:
            return e->value() * eval_on_graphon(e->child(), w);
        case DensityExpr::Kind::Add:
            return eval_on_graphon(e->lhs(), w) + eval_on_graphon(e->rhs(), w);
        case DensityExpr::Kind::Mul:
            return eval_on_graphon(e->lhs(), w) * eval_on_graphon(e->rhs(), w);
    }
    return Rational(0);
}

std::string expr_to_string(const ExprPtr& e) {
    switch (e->kind()) {
        case DensityExpr::Kind::GraphAtom:
            return e->graph().str();
        case DensityExpr::Kind::FlagAtom:
            return e->flag().str();
        case DensityExpr::Kind::Zero:
            return "0";
        case DensityExpr::Kind::One:
            return "1";
        case DensityExpr::Kind::Constant:
            return e->value().str();
        case DensityExpr::Kind::Scale:
            return e->value().str() + "*(" + expr_to_string(e->child()) + ")";
        case DensityExpr::Kind::Add:
            return "(" + expr_to_string(e->lhs()) + " + " + expr_to_string(e->rhs()) + ")";
        case DensityExpr::Kind::Mul:
            return "(" + expr_to_string(e->lhs()) + ")*(" + expr_to_string(e->rhs()) + ")";
    }
    return "";
}

// Flattening ------------------------------------------------------------------

LinearForm lift_form(const LinearForm& form, int level) {
    if (level == form.level) return form;
    if (level < form.level)
        throw LevelError("lift_form: target level below the form's level", form.level);
    LinearForm result = LinearForm::zero(level, form.type);
    if (form.labelled()) {
        auto from = basis_flags(form);
        auto to = basis_flags(result);
        for (size_t i = 0; i < from.size(); ++i) {
            if (form.coefficients[i].is_zero()) continue;
            for (size_t j = 0; j < to.size(); ++j)
                result.coefficients[j] += form.coefficients[i] * labelled_density(from[i], to[j]);
        }
    } else {
        auto from = basis_graphs(form);
        auto to = basis_graphs(result);
        for (size_t i = 0; i < from.size(); ++i) {
            if (form.coefficients[i].is_zero()) continue;
            for (size_t j = 0; j < to.size(); ++j)
                result.coefficients[j] +=
                    form.coefficients[i] * density(from[i].graph(), to[j].graph());
        }
    }
    return result;
}

LinearForm product_form(const LinearForm& a, const LinearForm& b) {
    if (a.type != b.type) throw TypeError("product_form: mismatched types");
    int k = a.labelled() ? a.type->size() : 0;
    int level = a.level + b.level - k;
    LinearForm result = LinearForm::zero(level, a.type);
    if (a.labelled()) {
        auto left = basis_flags(a);
        auto right = basis_flags(b);
        auto host = basis_flags(result);
        for (size_t i = 0; i < left.size(); ++i) {
            if (a.coefficients[i].is_zero()) continue;
            for (size_t j = 0; j < right.size(); ++j) {
                if (b.coefficients[j].is_zero()) continue;
                Rational weight = a.coefficients[i] * b.coefficients[j];
                for (size_t h = 0; h < host.size(); ++h)
                    result.coefficients[h] +=
                        weight * labelled_split_density(left[i], right[j], host[h]);
            }
        }
    } else {
        auto left = basis_graphs(a);
        auto right = basis_graphs(b);
        auto host = basis_graphs(result);
        for (size_t i = 0; i < left.size(); ++i) {
            if (a.coefficients[i].is_zero()) continue;
            for (size_t j = 0; j < right.size(); ++j) {
                if (b.coefficients[j].is_zero()) continue;
                Rational weight = a.coefficients[i] * b.coefficients[j];
                for (size_t h = 0; h < host.size(); ++h)
                    result.coefficients[h] +=
                        weight * split_density(left[i].graph(), right[j].graph(), host[h].graph());
            }
        }
    }
    return result;
}

namespace {

size_t flag_basis_index(const Flag& f, int level) {
    auto basis = enumerate_flags(f.type(), level, Graph::kMaxEnumeration);
    Flag canon = canonical_form(f);
    auto it = std::lower_bound(basis.begin(), basis.end(), canon);
    if (it == basis.end() || !(*it == canon))
        throw std::logic_error("flag basis index: canonical flag missing from basis");
    return static_cast<size_t>(it - basis.begin());
}

// Flattens to the expression's own minimal level; lifting to the caller's
// level happens at the very end.
LinearForm flatten_rec(const ExprPtr& e, const std::optional<TypeGraph>& type) {
    int k = type ? type->size() : 0;
    switch (e->kind()) {
        case DensityExpr::Kind::Zero:
            return LinearForm::zero(k, type);
        case DensityExpr::Kind::One:
        case DensityExpr::Kind::Constant: {
            // 1 is the empty graph (or the bare type flag); constants scale it.
            LinearForm unit = LinearForm::zero(k, type);
            unit.coefficients[0] =
                e->kind() == DensityExpr::Kind::One ? Rational(1) : e->value();
            return unit;
        }
        case DensityExpr::Kind::GraphAtom: {
            const Graph& g = e->graph();
            LinearForm form = LinearForm::zero(g.vertex_count());
            form.coefficients[basis_index(g, g.vertex_count())] = Rational(1);
            return form;
        }
        case DensityExpr::Kind::FlagAtom: {
            const Flag& f = e->flag();
            LinearForm form = LinearForm::zero(f.vertex_count(), f.type());
            form.coefficients[flag_basis_index(f, f.vertex_count())] = Rational(1);
            return form;
        }
        case DensityExpr::Kind::Scale:
            return flatten_rec(e->child(), type).scaled(e->value());
        case DensityExpr::Kind::Add: {
            LinearForm a = flatten_rec(e->lhs(), type);
            LinearForm b = flatten_rec(e->rhs(), type);
            int level = std::max(a.level, b.level);
            LinearForm result = lift_form(a, level);
            result += lift_form(b, level);
            return result;
        }
        case DensityExpr::Kind::Mul:
            return product_form(flatten_rec(e->lhs(), type), flatten_rec(e->rhs(), type));
    }
    return LinearForm::zero(0);
}

}  // namespace

LinearForm to_linear_form(const ExprPtr& e, int level, std::optional<TypeGraph> force_type) {
    auto type = resolve_type(e, force_type);
    int minimum = min_level_rec(e, type ? type->size() : 0);
    if (level < minimum)
        throw LevelError("to_linear_form: level " + std::to_string(level) + " too small", minimum);
    return lift_form(flatten_rec(e, type), level);
}

LinearForm to_linear_form(const ExprPtr& e) {
    return to_linear_form(e, min_level(e));
}

ExprPtr form_to_expr(const LinearForm& form) {
    ExprPtr sum;
    auto append = [&sum](ExprPtr term) {
        sum = sum ? DensityExpr::add(std::move(sum), std::move(term)) : std::move(term);
    };
    if (form.labelled()) {
        auto basis = basis_flags(form);
        for (size_t i = 0; i < basis.size(); ++i)
            if (!form.coefficients[i].is_zero())
                append(DensityExpr::scale(form.coefficients[i], DensityExpr::flag_atom(basis[i])));
    } else {
        auto basis = basis_graphs(form);
        for (size_t i = 0; i < basis.size(); ++i)
            if (!form.coefficients[i].is_zero())
                append(DensityExpr::scale(form.coefficients[i], DensityExpr::graph_atom(basis[i].graph())));
    }
    return sum ? sum : DensityExpr::zero();
}

// Assertions ------------------------------------------------------------------

AssertionPtr Assertion::falsum() {
    return std::shared_ptr<Assertion>(new Assertion(Kind::False));
}

AssertionPtr Assertion::verum() {
    return std::shared_ptr<Assertion>(new Assertion(Kind::True));
}

AssertionPtr Assertion::geq(ExprPtr l, ExprPtr r) {
    // Both sides must live in one algebra (constants are neutral).
    std::optional<TypeGraph> type = l->flag_type();
    bool unlabelled = l->has_unlabelled_atoms();
    merge_types(type, unlabelled, r->flag_type(), r->has_unlabelled_atoms());
    auto a = std::shared_ptr<Assertion>(new Assertion(Kind::Geq));
    a->lhs_expr_ = std::move(l);
    a->rhs_expr_ = std::move(r);
    return a;
}

AssertionPtr Assertion::negation(AssertionPtr operand) {
    auto a = std::shared_ptr<Assertion>(new Assertion(Kind::Not));
    a->a_ = std::move(operand);
    return a;
}

AssertionPtr Assertion::disjunction(AssertionPtr x, AssertionPtr y) {
    auto a = std::shared_ptr<Assertion>(new Assertion(Kind::Or));
    a->a_ = std::move(x);
    a->b_ = std::move(y);
    return a;
}

AssertionPtr Assertion::conjunction(AssertionPtr x, AssertionPtr y) {
    return negation(disjunction(negation(std::move(x)), negation(std::move(y))));
}

AssertionPtr Assertion::implication(AssertionPtr x, AssertionPtr y) {
    return disjunction(negation(std::move(x)), std::move(y));
}

AssertionPtr Assertion::equals(ExprPtr l, ExprPtr r) {
    return conjunction(geq(l, r), geq(r, l));
}

AssertionPtr Assertion::leq(ExprPtr l, ExprPtr r) {
    return geq(std::move(r), std::move(l));
}

AssertionPtr Assertion::lt(ExprPtr l, ExprPtr r) {
    return negation(geq(std::move(l), std::move(r)));
}

AssertionPtr Assertion::gt(ExprPtr l, ExprPtr r) {
    return negation(geq(std::move(r), std::move(l)));
}

namespace {

template <typename Oracle>
bool eval_assertion_impl(const AssertionPtr& a, const Oracle& oracle) {
    switch (a->kind()) {
        case Assertion::Kind::False:
            return false;
        case Assertion::Kind::True:
            return true;
        case Assertion::Kind::Geq: {
            Rational l = [&] {
                if constexpr (std::is_same_v<Oracle, Graph>)
                    return eval_on_host(a->lhs_expr(), oracle);
                else
                    return eval_on_graphon(a->lhs_expr(), oracle);
            }();
            Rational r = [&] {
                if constexpr (std::is_same_v<Oracle, Graph>)
                    return eval_on_host(a->rhs_expr(), oracle);
                else
                    return eval_on_graphon(a->rhs_expr(), oracle);
            }();
            return l >= r;
        }
        case Assertion::Kind::Not:
            return !eval_assertion_impl(a->operand(), oracle);
        case Assertion::Kind::Or:
            return eval_assertion_impl(a->lhs(), oracle) || eval_assertion_impl(a->rhs(), oracle);
    }
    return false;
}

}  // namespace

bool eval_assertion(const AssertionPtr& a, const Graph& host) {
    return eval_assertion_impl(a, host);
}

bool eval_assertion(const AssertionPtr& a, const StepGraphon& w) {
    return eval_assertion_impl(a, w);
}

}  // namespace flagcalc
