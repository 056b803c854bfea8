#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gra/syntax/term.hpp"

namespace gra {

struct PropNode;
using Prop = std::shared_ptr<const PropNode>;

// Propositional formula over p1, p2, ...
struct PropNode {
    enum class Kind { var, neg, conj, disj, implies };
    Kind kind;
    std::size_t var = 0;
    Prop a, b;
};

namespace prop {
Prop var(std::size_t i);
Prop neg(Prop a);
Prop conj(Prop a, Prop b);
Prop disj(Prop a, Prop b);
Prop implies(Prop a, Prop b);
}  // namespace prop

// Clauses of non-zero literals as in DIMACS.
struct Cnf {
    std::size_t variables = 0;
    std::vector<std::vector<int>> clauses;
};

Cnf parse_dimacs(const std::string& text);
std::string print_dimacs(const Cnf& cnf);

// Syntax: p1, ~, &, |, -> (right associative), parentheses.
Prop parse_prop(const std::string& text);
std::string print_prop(const Prop& p);

// Clause l1 ∨ ... ∨ ln becomes ¬(¬l1 ∧ ... ∧ ¬ln); clauses are conjoined left
// to right. Throws usage on an empty CNF or an empty clause.
Prop cnf_to_prop(const Cnf& cnf);

// Rewrites ∨ and → into ¬ and ∧ and drops double negations.
Prop lower_prop(const Prop& p);

bool prop_holds(const Prop& p, const std::vector<bool>& assignment);  // assignment[i] is p_i

// p_i ↦ P_i, ¬ ↦ not, ∧ ↦ J, then I applied until a single column is left,
// identifying columns right to left. Signature {I, not, J}.
Term reduce_sat_to_inj(const Prop& p);

// p_i ↦ not(ex(not(P_i))), ¬ ↦ not, ∧ ↦ J. Signature {not, J, ex}.
Term reduce_sat_to_njex(const Prop& p);

}  // namespace gra
