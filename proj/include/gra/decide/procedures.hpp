#pragma once

#include "gra/decide/oracle.hpp"
#include "gra/decide/verdict.hpp"

namespace gra {

// Terms over {e, p, s, I, not, ex}: a string of unary operators over one
// leaf. Decided by a left-to-right finite-state scan of the operator string.
SatVerdict sat_joinfree(const Term& t);

// Terms over {e, p, s, I, not, J}: decided by the oracle on the quantifier-free
// translation at bound max(1, ar(t)), which is complete for such formulas.
SatVerdict sat_quantifier_free(const Term& t, const OracleOptions& opts = {});

// Quantifier-free formulas, at bound max(1, number of free variables).
SatVerdict sat_quantifier_free(const Formula& f, const OracleOptions& opts = {});

}  // namespace gra
