#pragma once

#include <optional>
#include <string>

#include "gra/decide/fragment_f.hpp"
#include "gra/decide/herbrand.hpp"
#include "gra/decide/procedures.hpp"

namespace gra {

enum class SatMethod { automatic, automaton, cqe, qf, herbrand, fragment_f, oracle };

// "auto", "automaton", "cqe", "qf", "herbrand", "fragment-f", "oracle".
std::optional<SatMethod> parse_sat_method(const std::string& name);
std::string to_string(SatMethod m);

// Conjunctive queries with equality are satisfied by the one-element
// structure interpreting every symbol as full.
SatVerdict sat_cqe(const Term& t);
SatVerdict sat_cqe(const Formula& f);

// With SatMethod::automatic, picks the most specific exact procedure: for
// terms automaton, cqe, qf, fragment-f; for formulas cqe, qf, herbrand,
// fragment-f. Otherwise falls back to the oracle at opts.max_domain. An
// explicit method that does not apply throws not_in_fragment.
SatVerdict sat_router(const Term& t, SatMethod method, const OracleOptions& opts = {});
SatVerdict sat_router(const Formula& f, SatMethod method, const OracleOptions& opts = {});

}  // namespace gra
