#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "flagcalc/density.hpp"
#include "flagcalc/downward.hpp"
#include "flagcalc/expr.hpp"
#include "flagcalc/graphon.hpp"
#include "flagcalc/parser.hpp"

using namespace flagcalc;

namespace {

const TypeGraph kPoint = TypeGraph(Graph(1));

std::vector<StepGraphon> graphon_suite() {
    return {
        StepGraphon::uniform(Rational(1, 2)),
        StepGraphon::uniform(Rational(2, 7)),
        StepGraphon::complete_bipartite(),
        StepGraphon({Rational(1, 3), Rational(2, 3)},
                    {{Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(0)}}),
        StepGraphon({Rational(1, 4), Rational(3, 4)},
                    {{Rational(1, 5), Rational(4, 5)}, {Rational(4, 5), Rational(0)}}),
    };
}

}  // namespace

TEST_CASE("downward measures of single flags") {
    GraphMeasure isolated = downward_measure(Flag::parse("f:3:{12}|t:1:{}|theta:3"));
    REQUIRE(isolated.size() == 1);
    CHECK(isolated.begin()->first == canonical_form(Graph(3, {{0, 1}})));
    CHECK(isolated.begin()->second == Rational(1, 3));

    GraphMeasure endpoint = downward_measure(Flag::parse("f:3:{12,23}|t:1:{}|theta:1"));
    REQUIRE(endpoint.size() == 1);
    CHECK(endpoint.begin()->first == canonical_form(Graph::path(3)));
    CHECK(endpoint.begin()->second == Rational(2, 3));

    // the bare type flag carries |Aut(tau)| / v(tau)!
    TypeGraph path_type(Graph::path(3));
    GraphMeasure bare = downward_measure(Flag(Graph::path(3), {0, 1, 2}, path_type));
    REQUIRE(bare.size() == 1);
    CHECK(bare.begin()->second == Rational(2, 6));
}

TEST_CASE("downward transfer of the labelled square") {
    ExprPtr diff = parse_expr("f:2:{}|t:1:{}|theta:1 - f:2:{12}|t:1:{}|theta:1");
    LinearForm square = to_linear_form(DensityExpr::mul(diff, diff), 3);
    LinearForm image = downward_transfer(square);
    REQUIRE(!image.labelled());
    REQUIRE(image.coefficients.size() == 4);
    CHECK(image.coefficients[0] == Rational(1));
    CHECK(image.coefficients[1] == Rational(-1, 3));
    CHECK(image.coefficients[2] == Rational(-1, 3));
    CHECK(image.coefficients[3] == Rational(1));
}

TEST_CASE("downward transfer basics") {
    CHECK(downward_transfer(LinearForm::zero(3, kPoint)).is_zero());
    CHECK_THROWS_AS(downward_transfer(LinearForm::zero(3)), std::invalid_argument);

    // a single center-labelled path flag lands on the path with weight 1/3
    LinearForm unit = to_linear_form(parse_expr("f:3:{12,13}|t:1:{}|theta:1"), 3);
    LinearForm image = downward_transfer(unit);
    CHECK(image.coefficients[basis_index(Graph::path(3), 3)] == Rational(1, 3));
    CHECK(image.coefficients[0] == Rational(0));
    CHECK(image.coefficients[1] == Rational(0));
    CHECK(image.coefficients[3] == Rational(0));
}

TEST_CASE("downward transfer is linear") {
    auto flags = enumerate_flags(kPoint, 3);
    LinearForm x = LinearForm::zero(3, kPoint), y = LinearForm::zero(3, kPoint);
    x.coefficients[1] = Rational(2, 3);
    x.coefficients[4] = Rational(-1, 5);
    y.coefficients[0] = Rational(7);
    y.coefficients[5] = Rational(-3, 2);
    Rational a(5, 4), b(-2, 9);

    LinearForm combo = x.scaled(a);
    combo += y.scaled(b);
    LinearForm lhs = downward_transfer(combo);
    LinearForm rhs = downward_transfer(x).scaled(a);
    rhs += downward_transfer(y).scaled(b);
    CHECK(lhs == rhs);
}

TEST_CASE("label-averaged density") {
    // no embedding of the type means the zero measure
    TypeGraph edge_type(Graph::complete(2));
    Flag lk2(Graph::complete(2), {0, 1}, edge_type);
    CHECK(label_averaged_density(lk2, Graph(3)) == Rational(0));

    // the bare point type integrates to 1 against any nonempty host
    Flag point_flag(Graph(1), {0}, kPoint);
    for (const CanonicalGraph& g : enumerate_graphs(4))
        if (g.graph().vertex_count() > 0)
            CHECK(label_averaged_density(point_flag, g.graph()) == Rational(1));

    CHECK(label_averaged_density(lk2, Graph::complete(3)) == Rational(1));
}

TEST_CASE("adjointness on small sweeps") {
    // edge-type flags on 3 vertices against the 4-path
    TypeGraph edge_type(Graph::complete(2));
    for (const Flag& f : enumerate_flags(edge_type, 3))
        CHECK(check_adjointness(f, Graph::path(4)));

    // the one-vertex type, all flags on up to 3 vertices, hosts up to 4
    for (int fv = 1; fv <= 3; ++fv)
        for (const Flag& f : enumerate_flags(kPoint, fv))
            for (int hv = 0; hv <= 4; ++hv)
                for (const CanonicalGraph& host : enumerate_graphs(hv))
                    CHECK(check_adjointness(f, host.graph()));

    // oversized patterns: both sides vanish
    Flag big = Flag::parse("f:4:{12,23,34}|t:1:{}|theta:1");
    CHECK(check_adjointness(big, Graph::path(3)));
}

TEST_CASE("valid labelled nonnegativity transfers to graphons") {
    // squares and nonnegative combinations of squares are valid labelled
    // inequalities; their downward images stay nonnegative on limit objects
    ExprPtr li2 = parse_expr("f:2:{}|t:1:{}|theta:1");
    ExprPtr le2 = parse_expr("f:2:{12}|t:1:{}|theta:1");
    std::vector<ExprPtr> squares = {
        DensityExpr::mul(DensityExpr::subtract(li2, le2), DensityExpr::subtract(li2, le2)),
        DensityExpr::mul(DensityExpr::add(li2, DensityExpr::scale(Rational(2), le2)),
                         DensityExpr::add(li2, DensityExpr::scale(Rational(2), le2))),
        DensityExpr::mul(DensityExpr::subtract(le2, DensityExpr::scale(Rational(1, 3), li2)),
                         DensityExpr::subtract(le2, DensityExpr::scale(Rational(1, 3), li2))),
    };
    std::vector<LinearForm> forms;
    for (const ExprPtr& e : squares) forms.push_back(to_linear_form(e, 3));
    {
        LinearForm sum = forms[0].scaled(Rational(2, 5));
        sum += forms[1].scaled(Rational(1, 7));
        forms.push_back(sum);
    }
    for (const LinearForm& lf : forms) {
        ExprPtr image = form_to_expr(downward_transfer(lf));
        for (const StepGraphon& w : graphon_suite())
            CHECK(!eval_on_graphon(image, w).is_negative());
    }
}

TEST_CASE("finite-host nonnegativity implies graphon nonnegativity downstairs") {
    // The finite reflection: whenever a labelled form is nonnegative against
    // every flag host up to 6 vertices, its downward image is nonnegative on
    // the graphon suite. Note that flattened squares fail the premise (the
    // product identity is asymptotic), so the premise is genuinely a filter.
    auto premise_holds = [](const LinearForm& lf) {
        for (int hv = 1; hv <= 6; ++hv)
            for (const Flag& host : enumerate_flags(kPoint, hv))
                if (eval_form_on_flag(lf, host).is_negative()) return false;
        return true;
    };

    std::vector<LinearForm> suite;
    LinearForm nonneg = LinearForm::zero(3, kPoint);
    nonneg.coefficients[0] = Rational(1, 2);
    nonneg.coefficients[3] = Rational(2);
    suite.push_back(nonneg);
    LinearForm ones = to_linear_form(parse_expr("1"), 3, kPoint);
    suite.push_back(ones);
    LinearForm mixed = LinearForm::zero(3, kPoint);
    mixed.coefficients[1] = Rational(-1);
    mixed.coefficients[2] = Rational(1);
    suite.push_back(mixed);
    ExprPtr li2 = parse_expr("f:2:{}|t:1:{}|theta:1");
    ExprPtr le2 = parse_expr("f:2:{12}|t:1:{}|theta:1");
    ExprPtr diff = DensityExpr::subtract(li2, le2);
    suite.push_back(to_linear_form(DensityExpr::mul(diff, diff), 3));

    int premise_true = 0, premise_false = 0;
    for (const LinearForm& lf : suite) {
        if (!premise_holds(lf)) {
            ++premise_false;
            continue;
        }
        ++premise_true;
        ExprPtr image = form_to_expr(downward_transfer(lf));
        for (const StepGraphon& w : graphon_suite())
            CHECK(!eval_on_graphon(image, w).is_negative());
    }
    CHECK(premise_true >= 2);
    CHECK(premise_false >= 1);
}
