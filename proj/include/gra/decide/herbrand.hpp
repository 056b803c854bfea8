#pragma once

#include <string>
#include <vector>

#include "gra/decide/oracle.hpp"
#include "gra/syntax/formula.hpp"

namespace gra {

enum class Quantifier { exists, forall };

struct HerbrandLiteral {
    bool positive = true;
    bool equality = false;
    std::string name;  // relation symbol unless equality
    std::vector<Var> args;
};

// Q1 x1 ... Qn xn (l1 ∧ ... ∧ lm) with every variable quantified once.
struct HerbrandSentence {
    std::vector<std::pair<Quantifier, Var>> prefix;
    std::vector<HerbrandLiteral> matrix;
};

// Throws not_in_fragment unless f is a prenex sentence over a conjunction of
// literals with each variable quantified once.
HerbrandSentence herbrand_from_formula(const Formula& f);

// An empty matrix is rendered as the tautology x = x.
Formula herbrand_to_formula(const HerbrandSentence& h);

std::string print_herbrand(const HerbrandSentence& h);

// Throws not_in_fragment when a variable is quantified twice or occurs
// unquantified.
void validate_herbrand(const HerbrandSentence& h);

// Whether h has a model with a single element.
bool herbrand_one_element(const HerbrandSentence& h);

struct EqualityElimination {
    enum class Outcome { unsat, size_one, residue };
    Outcome outcome = Outcome::residue;
    bool one_element = false;         // size_one: the verdict
    HerbrandSentence residue;         // residue: equality-free, equisatisfiable
    std::string fresh_symbol;         // inequality symbol, if one was introduced
};

// Removes (in)equality literals: x = x is dropped, ¬x = x and ¬x = y with y
// universal (y quantified inside x) are unsatisfiable, x = y with y
// universal forces a one-element model, ¬x = y with y existential becomes
// ¬E(x, y) under ∀z E(z, z), and x = y with y existential substitutes x for
// y. Repeats until no equality is left.
EqualityElimination herbrand_eliminate_equality(const HerbrandSentence& h);

// Equality-free h is unsatisfiable iff two complementary literals unify once
// the existential variables are replaced by Skolem terms.
bool herbrand_clash(const HerbrandSentence& h);

// Exact unsatisfiability test without model search.
bool herbrand_refuted(const HerbrandSentence& h);

// Equality elimination, then the clash test; a clash-free residue is searched
// by the oracle up to max(2, number of variables).
SatVerdict sat_herbrand(const HerbrandSentence& h, const OracleOptions& opts = {});

}  // namespace gra
