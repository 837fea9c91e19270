#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "flagcalc/density.hpp"
#include "flagcalc/downward.hpp"
#include "flagcalc/expr.hpp"
#include "flagcalc/prover.hpp"

namespace flagcalc {

namespace {

// Best rational approximation of x with denominator at most max_den, via
// continued-fraction convergents plus the final semiconvergent.
Rational best_approx(double x, long max_den) {
    bool negative = x < 0;
    double y = negative ? -x : x;
    long h_prev2 = 0, k_prev2 = 1, h_prev = 1, k_prev = 0;
    double frac = y;
    for (int iter = 0; iter < 64; ++iter) {
        double fa = std::floor(frac);
        if (fa > 1e17) break;
        long a = static_cast<long>(fa);
        long h = a * h_prev + h_prev2, k = a * k_prev + k_prev2;
        if (k > max_den) {
            long t = k_prev > 0 ? (max_den - k_prev2) / k_prev : 0;
            if (t > 0 && k_prev > 0) {
                long hs = t * h_prev + h_prev2, ks = t * k_prev + k_prev2;
                double conv = static_cast<double>(h_prev) / static_cast<double>(k_prev);
                double semi = static_cast<double>(hs) / static_cast<double>(ks);
                if (std::fabs(y - semi) < std::fabs(y - conv)) {
                    h_prev = hs;
                    k_prev = ks;
                }
            }
            break;
        }
        h_prev2 = h_prev;
        k_prev2 = k_prev;
        h_prev = h;
        k_prev = k;
        double rem = frac - fa;
        if (rem < 1e-12) break;
        frac = 1.0 / rem;
    }
    if (k_prev == 0) return Rational(0);
    return Rational(negative ? -h_prev : h_prev, k_prev);
}

using DoubleMatrix = std::vector<std::vector<double>>;

// Cyclic Jacobi eigendecomposition for small symmetric matrices; a becomes
// diagonal, v accumulates the rotations columnwise.
void jacobi_eigen(DoubleMatrix& a, DoubleMatrix& v) {
    size_t n = a.size();
    v.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-24) return;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-18) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (size_t i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (size_t i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (size_t i = 0; i < n; ++i) {
                    double vip = v[i][p], viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }
}

void project_psd(DoubleMatrix& q) {
    size_t n = q.size();
    DoubleMatrix a = q, v;
    jacobi_eigen(a, v);
    std::vector<double> eig(n);
    for (size_t i = 0; i < n; ++i) eig[i] = std::max(a[i][i], 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double sum = 0.0;
            for (size_t k = 0; k < n; ++k) sum += v[i][k] * eig[k] * v[j][k];
            q[i][j] = sum;
        }
    // Exact symmetry despite rounding.
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) q[i][j] = q[j][i] = 0.5 * (q[i][j] + q[j][i]);
}

struct BlockContext {
    TypeGraph type;
    std::vector<Flag> flags;
    // images[i][j] for i <= j: downward image of F_i*F_j lifted to the level,
    // with the off-diagonal symmetry factor 2 already folded in.
    std::vector<std::vector<LinearForm>> images;
};

struct SearchContext {
    TargetShape target;
    int level = 0;
    LinearForm goal;                 // c*1 - E (upper) or E - c*1 (lower)
    std::vector<bool> constrained;   // true where no forbidden graph embeds
    std::vector<BlockContext> blocks;
};

SearchContext build_context(const TargetShape& target, int level,
                            const std::vector<TypeGraph>& types) {
    SearchContext ctx;
    ctx.target = target;
    ctx.level = level;

    LinearForm base = to_linear_form(target.bound_expr, level);
    LinearForm ones = to_linear_form(DensityExpr::one(), level);
    ctx.goal = target.upper ? ones.scaled(target.bound) : base;
    ctx.goal += target.upper ? base.scaled(Rational(-1)) : ones.scaled(-target.bound);

    auto basis = enumerate_graphs(level, Graph::kMaxEnumeration);
    ctx.constrained.assign(basis.size(), true);
    for (size_t i = 0; i < basis.size(); ++i)
        for (const Graph& f : target.forbidden)
            if (!density(f, basis[i].graph()).is_zero()) ctx.constrained[i] = false;

    for (const TypeGraph& type : types) {
        BlockContext block;
        block.type = type;
        int s = (level + type.size()) / 2;
        block.flags = enumerate_flags(type, s, Graph::kMaxEnumeration);
        size_t m = block.flags.size();
        std::vector<LinearForm> units;
        for (const Flag& f : block.flags)
            units.push_back(to_linear_form(DensityExpr::flag_atom(f), s));
        block.images.assign(m, std::vector<LinearForm>());
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = i; j < m; ++j) {
                LinearForm image = downward_transfer(
                    lift_form(product_form(units[i], units[j]), level));
                if (i != j) image = image.scaled(Rational(2));
                block.images[i].push_back(std::move(image));
            }
        }
        ctx.blocks.push_back(std::move(block));
    }
    return ctx;
}

using CandidateQ = std::vector<RationalMatrix>;  // one symmetric matrix per block

std::vector<Rational> exact_margins(const SearchContext& ctx, const CandidateQ& qs) {
    std::vector<Rational> margins = ctx.goal.coefficients;
    for (size_t b = 0; b < ctx.blocks.size(); ++b) {
        const BlockContext& block = ctx.blocks[b];
        size_t m = block.flags.size();
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i; j < m; ++j) {
                const Rational& weight = qs[b][i][j];
                if (weight.is_zero()) continue;
                const auto& coeffs = block.images[i][j - i].coefficients;
                for (size_t h = 0; h < margins.size(); ++h)
                    margins[h] -= weight * coeffs[h];
            }
    }
    return margins;
}

bool feasible(const SearchContext& ctx, const CandidateQ& qs,
              std::vector<Rational>* margins_out = nullptr) {
    for (const RationalMatrix& q : qs)
        if (!psd_check_exact(q)) return false;
    std::vector<Rational> margins = exact_margins(ctx, qs);
    for (size_t h = 0; h < margins.size(); ++h)
        if (ctx.constrained[h] && margins[h].is_negative()) return false;
    if (margins_out) *margins_out = std::move(margins);
    return true;
}

Certificate assemble(const SearchContext& ctx, const CandidateQ& qs,
                     const std::vector<Rational>& margins) {
    Certificate cert;
    cert.target = target_to_string(ctx.target);
    cert.level = ctx.level;
    for (size_t b = 0; b < ctx.blocks.size(); ++b) {
        CertificateBlock block;
        block.type = ctx.blocks[b].type;
        block.flags = ctx.blocks[b].flags;
        block.q = qs[b];
        block.lambda = Rational(1);
        cert.blocks.push_back(std::move(block));
    }
    // Negative margins may only sit on basis graphs containing a forbidden
    // graph; erase each with one assumption multiplier.
    auto basis = enumerate_graphs(ctx.level, Graph::kMaxEnumeration);
    std::vector<bool> erased(margins.size(), false);
    for (const Graph& f : ctx.target.forbidden) {
        Assumption assumption;
        assumption.forbidden = f;
        for (size_t h = 0; h < margins.size(); ++h) {
            if (ctx.constrained[h] || erased[h] || !margins[h].is_negative()) continue;
            if (density(f, basis[h].graph()).is_zero()) continue;
            assumption.mu.emplace(basis[h], -margins[h]);
            erased[h] = true;
        }
        if (!assumption.mu.empty()) cert.assumptions.push_back(std::move(assumption));
    }
    return cert;
}

std::optional<Certificate> try_certificate(const SearchContext& ctx, const CandidateQ& qs) {
    std::vector<Rational> margins;
    if (!feasible(ctx, qs, &margins)) return std::nullopt;
    Certificate cert = assemble(ctx, qs, margins);
    if (!verify_certificate(cert).accepted) return std::nullopt;
    return cert;
}

const long kLadder[] = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32, 48, 60, 64, 96, 100, 1000};

std::optional<Certificate> try_rationalize(const SearchContext& ctx,
                                           const std::vector<DoubleMatrix>& qd,
                                           long final_bound) {
    std::vector<long> ladder(std::begin(kLadder), std::end(kLadder));
    ladder.push_back(final_bound);
    for (long den : ladder) {
        if (den < 1 || den > final_bound) continue;
        CandidateQ qs;
        for (const DoubleMatrix& q : qd) {
            size_t m = q.size();
            RationalMatrix qr(m, std::vector<Rational>(m, Rational(0)));
            for (size_t i = 0; i < m; ++i)
                for (size_t j = i; j < m; ++j) qr[i][j] = qr[j][i] = best_approx(q[i][j], den);
            qs.push_back(std::move(qr));
        }
        if (auto cert = try_certificate(ctx, qs)) return cert;
    }
    return std::nullopt;
}

// Deterministic subgradient ascent on the smallest constrained margin, with
// projection onto the PSD cone after every step.
std::optional<Certificate> numeric_stage(const SearchContext& ctx, const SearchOptions& options) {
    std::vector<DoubleMatrix> qd;
    std::vector<std::vector<std::vector<double>>> images_d;  // per block: packed pair -> coeffs
    for (const BlockContext& block : ctx.blocks) {
        size_t m = block.flags.size();
        qd.emplace_back(m, std::vector<double>(m, 0.0));
        std::vector<std::vector<double>> packed;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i; j < m; ++j) {
                std::vector<double> coeffs;
                for (const Rational& c : block.images[i][j - i].coefficients)
                    coeffs.push_back(c.to_double());
                packed.push_back(std::move(coeffs));
            }
        images_d.push_back(std::move(packed));
    }
    std::vector<double> goal_d;
    for (const Rational& c : ctx.goal.coefficients) goal_d.push_back(c.to_double());

    size_t dim = goal_d.size();
    for (int iter = 0; iter < options.iterations; ++iter) {
        if (iter % options.check_every == 0)
            if (auto cert = try_rationalize(ctx, qd, options.denominator_bound)) return cert;

        // Margins and the worst constrained coordinate.
        double worst = 0.0;
        size_t worst_h = dim;
        for (size_t h = 0; h < dim; ++h) {
            if (!ctx.constrained[h]) continue;
            double margin = goal_d[h];
            for (size_t b = 0; b < ctx.blocks.size(); ++b) {
                size_t m = qd[b].size(), pair = 0;
                for (size_t i = 0; i < m; ++i)
                    for (size_t j = i; j < m; ++j, ++pair)
                        margin -= qd[b][i][j] * images_d[b][pair][h];
            }
            if (worst_h == dim || margin < worst) {
                worst = margin;
                worst_h = h;
            }
        }
        if (worst_h == dim) break;  // nothing constrained: any PSD matrix works

        double step = 0.3 / std::sqrt(static_cast<double>(iter) + 1.0);
        for (size_t b = 0; b < ctx.blocks.size(); ++b) {
            size_t m = qd[b].size(), pair = 0;
            for (size_t i = 0; i < m; ++i)
                for (size_t j = i; j < m; ++j, ++pair) {
                    double g = images_d[b][pair][worst_h];
                    double delta = step * g * (worst < 0 ? -1.0 : -0.2);
                    qd[b][i][j] += delta;
                    if (i != j) qd[b][j][i] += delta;
                }
            project_psd(qd[b]);
        }
    }
    return try_rationalize(ctx, qd, options.denominator_bound);
}

// Exhaustive scan over a small-denominator lattice; only used for a single
// block with at most two flags. Deterministic first-found order.
std::optional<Certificate> grid_stage(const SearchContext& ctx, const SearchOptions& options) {
    if (ctx.blocks.size() != 1) return std::nullopt;
    size_t m = ctx.blocks.front().flags.size();
    if (m == 0 || m > 2) return std::nullopt;

    const long den = 12, span = 3 * den;
    const long diag_values = span + 1, off_values = 2 * span + 1;
    auto decode = [&](long index) {
        long x = index / (diag_values * off_values);
        long rest = index % (diag_values * off_values);
        return std::array<long, 3>{x, rest / off_values, rest % off_values - span};
    };
    auto candidate_at = [&](long index) -> CandidateQ {
        if (m == 1) {
            return {{{Rational(index, den)}}};
        }
        auto [x, z, y] = decode(index);
        return {{{Rational(x, den), Rational(y, den)}, {Rational(y, den), Rational(z, den)}}};
    };
    long total = m == 1 ? diag_values : diag_values * diag_values * off_values;
    auto viable = [&](long index) {
        if (m == 1) return true;
        auto [x, z, y] = decode(index);
        return x * z >= y * y;  // PSD for 2x2 on the lattice
    };

    int threads = std::max(1, options.threads);
    std::vector<long> found(static_cast<size_t>(threads), -1);
    std::vector<std::thread> workers;
    long chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&, t]() {
            long begin = t * chunk, end = std::min(total, begin + chunk);
            for (long index = begin; index < end; ++index) {
                if (!viable(index)) continue;
                if (feasible(ctx, candidate_at(index))) {
                    found[static_cast<size_t>(t)] = index;
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    long best = -1;
    for (long idx : found)
        if (idx >= 0 && (best < 0 || idx < best)) best = idx;
    if (best < 0) return std::nullopt;
    return try_certificate(ctx, candidate_at(best));
}

}  // namespace

std::optional<Certificate> search_certificate(const TargetShape& target, int level,
                                              const std::vector<TypeGraph>& types,
                                              const SearchOptions& options) {
    if (types.empty()) throw std::invalid_argument("search_certificate: no types given");
    SearchContext ctx = build_context(target, level, types);
    if (auto cert = numeric_stage(ctx, options)) return cert;
    if (options.exhaustive_grid)
        if (auto cert = grid_stage(ctx, options)) return cert;
    return std::nullopt;
}

}  // namespace flagcalc
