#include "flagcalc/prover.hpp"

#include <stdexcept>

#include "flagcalc/density.hpp"
#include "flagcalc/downward.hpp"
#include "flagcalc/errors.hpp"
#include "flagcalc/expr.hpp"

namespace flagcalc {

bool psd_check_exact(const RationalMatrix& input) {
    size_t n = input.size();
    for (const auto& row : input)
        if (row.size() != n) throw std::invalid_argument("psd check: matrix not square");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (input[i][j] != input[j][i])
                throw std::invalid_argument("psd check: matrix not symmetric");

    RationalMatrix a = input;
    std::vector<size_t> remaining(n);
    for (size_t i = 0; i < n; ++i) remaining[i] = i;

    while (!remaining.empty()) {
        // Symmetric pivoting: take the largest remaining diagonal entry.
        size_t pivot_pos = 0;
        for (size_t i = 1; i < remaining.size(); ++i)
            if (a[remaining[i]][remaining[i]] > a[remaining[pivot_pos]][remaining[pivot_pos]])
                pivot_pos = i;
        size_t p = remaining[pivot_pos];
        const Rational& pivot = a[p][p];
        if (pivot.is_negative()) return false;
        if (pivot.is_zero()) {
            // All remaining diagonals are <= 0. A zero diagonal with a
            // nonzero off-diagonal entry gives an indefinite 2x2 block.
            for (size_t i : remaining)
                for (size_t j : remaining)
                    if (!a[i][j].is_zero()) return false;
            return true;
        }
        remaining.erase(remaining.begin() + static_cast<long>(pivot_pos));
        for (size_t i : remaining) {
            if (a[i][p].is_zero()) continue;
            Rational factor = a[i][p] / pivot;
            for (size_t j : remaining) a[i][j] -= factor * a[p][j];
        }
    }
    return true;
}

LinearForm expand_block(const TypeGraph& tau, const std::vector<Flag>& flags,
                        const RationalMatrix& q, int level) {
    size_t m = flags.size();
    if (m == 0) throw std::invalid_argument("expand_block: empty flag basis");
    if (q.size() != m) throw std::invalid_argument("expand_block: Q size mismatch");
    for (const auto& row : q)
        if (row.size() != m) throw std::invalid_argument("expand_block: Q size mismatch");
    int s = flags.front().vertex_count();
    for (const Flag& f : flags) {
        if (f.type() != tau) throw std::invalid_argument("expand_block: flag of wrong type");
        if (f.vertex_count() != s)
            throw std::invalid_argument("expand_block: flags must share one size");
    }
    int k = tau.size();
    int product_level = 2 * s - k;
    if (level < product_level)
        throw LevelError("expand_block: level too small for the pairwise products",
                         product_level);

    // Unit forms for the flags, multiplied pairwise in the labelled algebra.
    std::vector<LinearForm> units;
    for (const Flag& f : flags) {
        ExprPtr atom = DensityExpr::flag_atom(f);
        units.push_back(to_linear_form(atom, s));
    }
    LinearForm total = LinearForm::zero(level, tau);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i; j < m; ++j) {
            Rational weight = i == j ? q[i][j] : q[i][j] + q[j][i];
            if (weight.is_zero()) continue;
            LinearForm prod = lift_form(product_form(units[i], units[j]), level);
            total += prod.scaled(weight);
        }
    }
    return downward_transfer(total);
}

namespace {

Verdict rejected(std::string message) {
    Verdict verdict;
    verdict.accepted = false;
    verdict.message = std::move(message);
    verdict.residual = LinearForm::zero(0);
    return verdict;
}

}  // namespace

Verdict verify_certificate(const Certificate& cert) {
    Verdict verdict;
    int n = cert.level;
    try {
        TargetShape target = parse_target(cert.target);
        if (n < 0) return rejected("negative level");

        LinearForm base = to_linear_form(target.bound_expr, n);
        verdict.trace.push_back(
            {"decompose", expr_to_string(target.bound_expr) + " = " + form_to_string(base)});

        LinearForm ones = to_linear_form(DensityExpr::one(), n);
        // c*1 - E for upper bounds, E - c*1 for lower bounds.
        LinearForm residual = target.upper ? ones.scaled(target.bound) : base;
        residual += target.upper ? base.scaled(Rational(-1)) : ones.scaled(-target.bound);

        for (size_t b = 0; b < cert.blocks.size(); ++b) {
            const CertificateBlock& block = cert.blocks[b];
            if (block.lambda.is_negative())
                return rejected("block " + std::to_string(b) + ": negative multiplier");
            if (!psd_check_exact(block.q))
                return rejected("block " + std::to_string(b) + ": Q is not positive semidefinite");
            LinearForm image = expand_block(block.type, block.flags, block.q, n);
            verdict.trace.push_back({"sos-inequality",
                                     form_to_string(image) + " >= 0 (downward image of block " +
                                         std::to_string(b + 1) + ")"});
            verdict.trace.push_back({"apply-block",
                                     (target.upper ? "add " : "subtract ") + block.lambda.str() +
                                         " * (block " + std::to_string(b + 1) + ")"});
            residual += image.scaled(-block.lambda);
        }

        auto basis = basis_graphs(residual);
        for (const Assumption& assumption : cert.assumptions) {
            bool declared = false;
            for (const Graph& f : target.forbidden)
                if (is_isomorphic(f, assumption.forbidden)) declared = true;
            if (!declared)
                return rejected("assumption graph " + assumption.forbidden.str() +
                                " is not forbidden by the target");
            for (const auto& [graph, mu] : assumption.mu) {
                if (density(assumption.forbidden, graph.graph()).is_zero())
                    return rejected("assumption multiplier on " + graph.str() +
                                    ", which does not contain " + assumption.forbidden.str());
                residual.coefficients[basis_index(graph.graph(), n)] += mu;
                verdict.trace.push_back(
                    {"assumption", "erase " + mu.str() + "*" + graph.str() + " (contains " +
                                       assumption.forbidden.str() + ", whose density is 0)"});
            }
        }

        for (const auto& [graph, amount] : cert.slack) {
            if (amount.is_negative())
                return rejected("negative slack on " + graph.str());
            residual.coefficients[basis_index(graph.graph(), n)] -= amount;
            verdict.trace.push_back({"slack", "pad " + amount.str() + "*" + graph.str()});
        }

        verdict.residual = residual;
        for (size_t i = 0; i < residual.coefficients.size(); ++i) {
            if (residual.coefficients[i].is_negative()) {
                verdict.accepted = false;
                verdict.message = "negative residual coefficient " +
                                  residual.coefficients[i].str() + " at " + basis[i].str();
                return verdict;
            }
        }
        verdict.accepted = true;
        verdict.trace.push_back(
            {"sum-to-one", "residual " + form_to_string(residual) +
                               " >= 0; the level-" + std::to_string(n) +
                               " basis sums to 1, so the bound " + target.bound.str() +
                               " follows"});
        verdict.message = "verified: " + target_to_string(target);
        return verdict;
    } catch (const std::exception& e) {
        return rejected(e.what());
    }
}

namespace {

CertificateBlock edge_flag_block(const Rational& lambda) {
    CertificateBlock block;
    block.type = TypeGraph::parse("t:1:{}");
    block.flags = {Flag::parse("f:2:{}|t:1:{}|theta:1"), Flag::parse("f:2:{12}|t:1:{}|theta:1")};
    block.q = {{Rational(1), Rational(-1)}, {Rational(-1), Rational(1)}};
    block.lambda = lambda;
    return block;
}

}  // namespace

Certificate mantel_certificate() {
    Certificate cert;
    cert.target = "g:3:{12,13,23} = 0 => g:2:{12} <= 1/2";
    cert.level = 3;
    cert.blocks = {edge_flag_block(Rational(1, 2))};
    cert.slack.emplace(canonical_form(Graph::parse("g:3:{12}")), Rational(1, 3));
    Assumption assumption;
    assumption.forbidden = Graph::parse("g:3:{12,13,23}");
    assumption.mu.emplace(canonical_form(assumption.forbidden), Rational(1));
    cert.assumptions = {assumption};
    return cert;
}

Certificate goodman_certificate() {
    Certificate cert;
    cert.target = "g:3:{} + g:3:{12,13,23} >= 1/4";
    cert.level = 3;
    cert.blocks = {edge_flag_block(Rational(3, 4))};
    return cert;
}

Verdict prove_mantel() {
    return verify_certificate(mantel_certificate());
}

Verdict prove_goodman() {
    return verify_certificate(goodman_certificate());
}

}  // namespace flagcalc
