#pragma once

#include <cstdint>
#include <optional>

#include "gra/decide/verdict.hpp"

namespace gra {

struct OracleOptions {
    std::size_t max_domain = 3;
    std::size_t jobs = 1;
    // Skip subtrees of partial interpretations whose three-valued value is
    // already decided. Never changes the verdict or the witness.
    bool prune = true;
    // Search limit; defaults to default_oracle_budget().
    std::optional<std::uint64_t> budget;
};

// GRA_MAX_ORACLE_STRUCTURES when set to a positive integer, otherwise 10^7.
std::uint64_t default_oracle_budget();

// Enumerates structures over domains {0..n-1}, n = 1..max_domain. Within a
// size, interpretations are read as one bit vector (symbols by name, tuples
// lexicographically, first bit most significant) and visited in ascending
// order. Returns SAT with the first structure on which the input is
// non-empty, otherwise UNSAT_UP_TO_BOUND. Throws budget_exceeded when the
// search would visit more structures (pruned search: more partial
// interpretations) than the budget allows.
SatVerdict sat_oracle(const Term& t, const OracleOptions& opts = {});
SatVerdict sat_oracle(const Formula& f, const OracleOptions& opts = {});

}  // namespace gra
