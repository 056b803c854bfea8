#pragma once

#include <optional>
#include <string>

#include "gra/relalg/structure.hpp"
#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"

namespace gra {

enum class VerdictKind { sat, unsat, unsat_up_to_bound };

struct SatVerdict {
    VerdictKind kind = VerdictKind::unsat;
    std::optional<Structure> witness;  // present iff kind == sat
    std::optional<std::size_t> bound;  // largest domain size searched, if bounded
    std::string method;
    std::string note;
};

// "SAT", "UNSAT", "UNSAT_UP_TO_BOUND".
std::string to_string(VerdictKind k);

// The input is non-empty on m (every symbol of the input must be interpreted).
bool witness_verifies(const Term& t, const Structure& m);
bool witness_verifies(const Formula& f, const Structure& m);

// m extended with empty relations for the symbols of vocab it does not
// interpret, and stripped of symbols outside vocab.
Structure restrict_to(const Structure& m, const Vocabulary& vocab);

}  // namespace gra
