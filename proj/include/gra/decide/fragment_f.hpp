#pragma once

#include "gra/decide/herbrand.hpp"

namespace gra {

// Negation normal form over ∧, ∨, ∃, ∀ and literals.
Formula negation_normal_form(const Formula& f);

// Moves quantifiers inwards through ∧ and ∨. On formulas of the fragment the
// result has every quantifier chain ending in a single literal.
Formula push_quantifiers(const Formula& f);

// Formulas where every binary connective joins subformulas with disjoint free
// variables. Free variables are read existentially. Each choice of disjuncts
// yields a Herbrand sentence decided by sat_herbrand; choices are explored
// depth first and abandoned as soon as the chosen part is refuted.
SatVerdict sat_fragment_f(const Formula& f, const OracleOptions& opts = {});

// Terms over {e, p, s, not, J, ex}, through their formula translation.
SatVerdict sat_fragment_f(const Term& t, const OracleOptions& opts = {});

}  // namespace gra
