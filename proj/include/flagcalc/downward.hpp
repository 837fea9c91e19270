#pragma once

#include <map>

#include "flagcalc/flag.hpp"
#include "flagcalc/graph.hpp"
#include "flagcalc/linear_form.hpp"
#include "flagcalc/rational.hpp"

namespace flagcalc {

// Finite nonnegative weights on canonical graphs.
using GraphMeasure = std::map<CanonicalGraph, Rational>;

// Weight the flag contributes to its underlying graph when labels are
// forgotten: a single entry, the labelling probability on the underlying
// graph.
GraphMeasure downward_measure(const Flag& f);

// Linear extension of the downward measure: maps a labelled form at level n
// to an unlabelled form at level n. Transfers valid nonnegativity from the
// labelled algebra to the unlabelled one.
LinearForm downward_transfer(const LinearForm& labelled);

// Density of the flag pattern against the label-averaged host distribution:
// the type's labelling weight times its density in the host, times the
// average labelled density over all label placements on the host. Zero when
// the type does not embed into the host.
Rational label_averaged_density(const Flag& pattern, const Graph& host);

// Exact finite-level adjointness: labelling weight times unlabelled density
// equals the label-averaged density.
bool check_adjointness(const Flag& pattern, const Graph& host);

}  // namespace flagcalc
