#pragma once

#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"
#include "gra/translate/trace.hpp"

namespace gra::translate {

// Fluted formula to a term over {not, sint, ex}.
Term fl_to_algebra(const Formula& f, Trace* trace = nullptr);

// Term over {not, sint, ex} to a fluted formula with free variables v1..v_ar(t).
Formula algebra_to_fl(const Term& t, Trace* trace = nullptr);

}  // namespace gra::translate
