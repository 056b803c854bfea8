#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"

namespace gra {

struct FragmentReport {
    bool relational_atom = false;
    bool atom = false;
    bool quantifier_free = false;
    bool cq = false;
    bool cqe = false;
    bool fluted = false;
    bool guarded = false;  // sentences only
    bool fo2 = false;      // sentences only, at most binary symbols
    bool fragment_f = false;
    bool herbrand = false;
    bool equality_free = false;
    std::optional<std::size_t> fluted_level;  // smallest k with the formula in FL^k
};

FragmentReport classify_formula(const Formula& f);

// Membership of a term in the operator subsystems the toolkit knows about.
struct TermReport {
    TermSignature signature;
    bool core = false;             // e p s I not J ex
    bool cq = false;               // p s I J ex, no e
    bool cqe = false;              // e p s I J ex
    bool guarded = false;          // e p s minus sint ex
    bool fluted = false;           // not sint ex, no e
    bool fo2 = false;              // e s not sint ex
    bool quantifier_free = false;  // e p s I not J
    bool join_free = false;        // e p s I not ex (unary only, so one leaf)
    bool fragment_f = false;       // e p s not J ex
    bool inj = false;              // I not J, no e
    bool njex = false;             // not J ex, no e
    bool equality_free = false;    // core without e
};

TermReport classify_term(const Term& t);

// Smallest k with f in FL^k (∨, → and ∀ count as their ¬/∧/∃ expansions).
std::optional<std::size_t> fluted_level(const Formula& f);

// Guarded-fragment check on a formula over ¬, ∧, ∃ (see normalize).
bool is_guarded_normalized(const Formula& f);

// Splits a conjunction tree into its conjuncts, left to right.
void flatten_conjunction(const Formula& f, std::vector<Formula>& out);

// For ∃-block bodies: index of the first atom conjunct whose variables cover
// the free variables of the whole conjunction.
std::optional<std::size_t> find_guard(const std::vector<Formula>& conjuncts);

// Text rendering of the reports, one "name: value" pair per line.
std::vector<std::pair<std::string, bool>> report_flags(const FragmentReport& r);
std::vector<std::pair<std::string, bool>> report_flags(const TermReport& r);

}  // namespace gra
