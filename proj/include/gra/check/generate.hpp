#pragma once

#include <cstdint>
#include <random>
#include <set>

#include "gra/decide/reduce.hpp"
#include "gra/relalg/structure.hpp"
#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"

namespace gra::gen {

using Rng = std::mt19937_64;

// Uniform-enough choice in [0, n); independent of the standard library's
// distribution implementations, so corpora are reproducible everywhere.
std::size_t pick(Rng& rng, std::size_t n);
bool coin(Rng& rng, std::size_t percent);

Structure random_structure(Rng& rng, const Vocabulary& vocab, std::size_t domain_size, std::size_t percent = 50);

// Vocabulary of `count` symbols named A, B, ... with arities drawn from [lo, hi].
Vocabulary random_vocabulary(Rng& rng, std::size_t count, std::size_t lo, std::size_t hi);

struct FormulaShape {
    std::size_t depth = 3;
    std::size_t variables = 3;  // v1..vN
    Vocabulary vocab;
    bool equality = true;
    bool derived = true;  // ∨, →, ∀
};

Formula random_formula(Rng& rng, const FormulaShape& shape);

struct TermShape {
    std::size_t depth = 3;
    std::set<Op> ops;  // operators allowed besides leaves
    Vocabulary vocab;
    bool equality = true;  // e leaves
    std::size_t max_arity = 4;
};

Term random_term(Rng& rng, const TermShape& shape);

// Guarded sentence with quantifier depth at most `depth`; guards are atoms
// of vocab or equalities.
Formula random_gf_sentence(Rng& rng, const Vocabulary& vocab, std::size_t depth);

// Sentence over v1, v2 only; vocab must be at most binary.
Formula random_fo2_sentence(Rng& rng, const Vocabulary& vocab, std::size_t depth);

// Fluted formula at level `level` (free variables among v1..v_level).
Formula random_fl_formula(Rng& rng, const Vocabulary& vocab, std::size_t level, std::size_t depth);

// Term of arity at most max_arity over {e, p, s, minus, sint, ex}.
Term random_guarded_term(Rng& rng, const Vocabulary& vocab, std::size_t depth, std::size_t max_arity = 4);

Cnf random_cnf(Rng& rng, std::size_t variables, std::size_t clauses, std::size_t width = 3);

}  // namespace gra::gen
