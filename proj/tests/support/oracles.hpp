#pragma once

#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "gra/decide/reduce.hpp"
#include "gra/relalg/structure.hpp"
#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"

namespace gra::testing {

// A term, or a formula read on the given columns (its free variables when
// `cols` is empty).
struct Expr {
    std::variant<Term, Formula> e;
    std::vector<Var> cols;

    Expr(Term t) : e(std::move(t)) {}
    Expr(Formula f, std::vector<Var> c = {}) : e(std::move(f)), cols(std::move(c)) {}
    std::string text() const;
};

// Calls f on every structure over {0..n-1} interpreting vocab, in ascending
// bit-vector order; stops early when f returns false.
void for_each_structure(const Vocabulary& vocab, std::size_t n, const std::function<bool(const Structure&)>& f);

// The structure whose cells (symbols by name, tuples lexicographically) are `bits`.
Structure structure_from_bits(const Vocabulary& vocab, std::size_t n, const std::vector<bool>& bits);

// Implementation value of x on m: evaluate for terms, fo_evaluate for formulas
// (rearranged onto the requested columns).
ADRelation implementation_value(const Expr& x, const Structure& m);

// Reference value of x on m.
bool matches_reference(const Expr& x, const Structure& m);

// Empty when a and b define the same relation on every structure over
// domains 1..max_n interpreting vocab. The reference semantics is compared
// symbolically over all structures, and the implementation is checked
// against it on every structure when a size has at most 2^exhaustive_bits
// structures, otherwise on `samples` random ones.
std::string disagreement_on_all_structures(const Vocabulary& vocab, std::size_t max_n, const Expr& a, const Expr& b,
                                           std::mt19937_64& rng, std::size_t exhaustive_bits = 10,
                                           std::size_t samples = 4);

// Davis-Putnam-Logemann-Loveland with unit propagation.
bool dpll_satisfiable(const Cnf& cnf);

// Truth-table check of a propositional formula over p1..p_vars.
bool brute_force_satisfiable(const Prop& p, std::size_t vars);

}  // namespace gra::testing
