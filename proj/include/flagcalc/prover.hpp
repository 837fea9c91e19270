#pragma once

#include <optional>
#include <vector>

#include "flagcalc/certificate.hpp"
#include "flagcalc/linear_form.hpp"
#include "flagcalc/rational.hpp"

namespace flagcalc {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Exact positive-semidefiniteness via LDL^T with symmetric pivoting; accepts
// iff all pivots are nonnegative and no indefinite block remains. Throws on
// non-symmetric input.
bool psd_check_exact(const RationalMatrix& m);

// Downward image of the quadratic form sum_ij Q_ij * F_i * F_j, flattened at
// the given level. For PSD Q the result is nonnegative under every limit
// semantics, which is what certificates build on.
LinearForm expand_block(const TypeGraph& tau, const std::vector<Flag>& flags,
                        const RationalMatrix& q, int level);

// Replays the certificate as an exact coefficient identity over the level-n
// basis and accepts iff the residual is nonnegative everywhere.
Verdict verify_certificate(const Certificate& cert);

struct SearchOptions {
    int iterations = 3000;          // numeric descent budget
    int check_every = 50;           // exact rounding attempts during descent
    long denominator_bound = 10000; // final continued-fraction bound
    bool exhaustive_grid = true;    // small-denominator grid fallback
    int threads = 1;
};

// Two-stage search: an untrusted numeric stage proposes candidate matrices,
// which are rounded to small-denominator rationals and accepted only if
// verify_certificate passes. Deterministic; returns nullopt when the budget
// is exhausted.
std::optional<Certificate> search_certificate(const TargetShape& target, int level,
                                              const std::vector<TypeGraph>& types,
                                              const SearchOptions& options = {});

// Built-in certificates for the two classical bounds.
Certificate mantel_certificate();
Certificate goodman_certificate();
Verdict prove_mantel();
Verdict prove_goodman();

}  // namespace flagcalc
