#pragma once

#include <vector>

#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"
#include "gra/translate/trace.hpp"

namespace gra::translate {

// An atomic term (e or a relation leaf) and 1-based positions into its
// tuples that cover every tuple of the guarded term.
struct TermGuard {
    Term guard;
    std::vector<std::size_t> positions;
};

// Inductive guard computation over {e, p, s, minus, sint, ex}. When `visited`
// is given it is incremented once per term node processed.
TermGuard compute_term_guard(const Term& t, std::size_t* visited = nullptr);

// GF sentence to an arity-0 term over {e, p, s, minus, sint, ex}.
Term gf_to_algebra(const Formula& f, Trace* trace = nullptr);

// Arity-0 term over {e, p, s, minus, sint, ex} to a GF sentence.
Formula algebra_to_gf(const Term& t, Trace* trace = nullptr);

// Removes guards x = y with x != y by substitution (see gf_to_algebra).
Formula eliminate_equality_guards(const Formula& normalized);

}  // namespace gra::translate
