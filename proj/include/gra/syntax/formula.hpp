#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gra/relalg/structure.hpp"

namespace gra {

// Variable vN is represented by N (N >= 1).
using Var = std::size_t;

enum class FKind { Atom, Equal, Not, And, Or, Implies, Exists, Forall };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    FKind kind;
    std::string name;       // Atom symbol
    std::vector<Var> args;  // Atom arguments; Equal uses args[0] = args[1]
    Var var = 0;            // bound variable of Exists / Forall
    Formula a, b;           // Not/quantifiers use a; binary connectives use a, b
    std::vector<Var> free;  // sorted free variables
    std::size_t size = 1;
};

namespace fo {

Formula atom(const std::string& name, std::vector<Var> args);
Formula eq(Var x, Var y);
Formula neg(Formula f);
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);
Formula implies(Formula l, Formula r);
Formula exists(Var x, Formula f);
Formula forall(Var x, Formula f);
Formula neq(Var x, Var y);

// Left-nested conjunction of a non-empty list.
Formula conj_all(const std::vector<Formula>& parts);

}  // namespace fo

bool equal(const Formula& a, const Formula& b);
bool is_sentence(const Formula& f);

// Every variable occurring in f, bound or free, sorted.
std::vector<Var> all_variables(const Formula& f);
// Smallest positive variable index not in the sorted list.
Var fresh_variable(const std::vector<Var>& used);

// Symbols of f; throws ErrorKind::arity on inconsistent use.
Vocabulary formula_vocabulary(const Formula& f);

// Capture-avoiding substitution of free occurrences of `from` by `to`.
Formula substitute(const Formula& f, Var from, Var to);

// Rewrites ∨, → and ∀ into ¬, ∧, ∃ and removes double negations.
Formula normalize(const Formula& f);
bool is_normalized(const Formula& f);

// The AD-relation defined by f: columns are the free variables by increasing index.
ADRelation fo_evaluate(const Formula& f, const Structure& m);

// Truth of f under an assignment (indexed by variable number).
bool fo_holds(const Formula& f, const Structure& m, std::vector<Element>& assignment);

std::string var_name(Var v);
std::string print_formula(const Formula& f);
Formula parse_formula(const std::string& text);

}  // namespace gra
