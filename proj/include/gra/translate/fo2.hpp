#pragma once

#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"
#include "gra/translate/trace.hpp"

namespace gra::translate {

// Two-variable sentence over at most binary symbols to an arity-0 term over
// {e, s, not, sint, ex}. Quantified subformulas are first rewritten so that no
// conjunction or disjunction mixes a subformula in only x with one in only y.
Term fo2_to_algebra(const Formula& f, Trace* trace = nullptr);

// The rewriting step on its own: the result is equivalent to f.
Formula fo2_separate(const Formula& f);

// Arity-0 term over {e, s, not, sint, ex} (at most binary leaves) to a
// sentence using only v1 and v2.
Formula algebra_to_fo2(const Term& t, Trace* trace = nullptr);

}  // namespace gra::translate
