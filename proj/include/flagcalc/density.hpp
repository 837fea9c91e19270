#pragma once

#include "flagcalc/flag.hpp"
#include "flagcalc/graph.hpp"
#include "flagcalc/linear_form.hpp"
#include "flagcalc/rational.hpp"

namespace flagcalc {

// Probability that a uniformly random v(pattern)-subset of the host's
// vertices induces a copy of the pattern; 0 when the pattern is larger.
Rational density(const Graph& pattern, const Graph& host);

// Labelled analogue: random subsets of the unlabelled vertices, the labelled
// part is kept fixed. Both flags must have the same type.
Rational labelled_density(const Flag& pattern, const Flag& host);

// Probability that uniformly random disjoint subsets of sizes v(h1), v(h2)
// induce copies of h1 and h2 respectively. Requires v(h1)+v(h2) <= v(host).
Rational split_density(const Graph& h1, const Graph& h2, const Graph& host);

// Labelled analogue over disjoint subsets of the unlabelled vertices.
Rational labelled_split_density(const Flag& h1, const Flag& h2, const Flag& host);

// The pattern expressed over the level-n basis: coefficient of each basis
// graph H is density(pattern, H). Requires v(pattern) <= level.
LinearForm chain_decompose(const Graph& pattern, int level);
LinearForm chain_decompose(const Flag& pattern, int level);

// All level-n basis densities of one host in a single subset sweep.
LinearForm density_profile(const Graph& host, int level);
LinearForm density_profile(const Flag& host, int level);

}  // namespace flagcalc
