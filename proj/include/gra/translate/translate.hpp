#pragma once

#include <vector>

#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"
#include "gra/translate/perm.hpp"
#include "gra/translate/trace.hpp"

namespace gra::translate {

// Term over {e,p,s,I,¬,J,∃} defining the same AD-relation as f. The input
// must be built from atoms, ¬, ∧ and ∃ only (see normalize).
Term fo_to_gra(const Formula& f, Trace* trace = nullptr);

// As fo_to_gra, refusing equality atoms; the output never contains e.
Term fo_to_gra_equality_free(const Formula& f, Trace* trace = nullptr);

// Formula with free variables exactly v1..v_ar(t) defining the same relation.
Formula gra_to_fo(const Term& t, Trace* trace = nullptr);

// Same, with the columns of t named by `vars` (distinct, one per column).
Formula gra_to_fo(const Term& t, const std::vector<Var>& vars, Trace* trace = nullptr);

// Rewrites I(T) to ∃(T ⩀ e) when ar(T) >= 2 and to T otherwise, bottom-up.
Term eliminate_I(const Term& t);

// Given a term whose columns carry `labels` (variables, possibly repeated),
// identifies repeated labels with I and sorts the columns into increasing
// label order. On return `labels` holds the final column labels.
Term identify_and_sort(Term t, std::vector<Var>& labels, Trace* trace = nullptr);

// Permutes the columns of t from `labels` order to sorted order.
Term sort_columns(Term t, std::vector<Var>& labels);

// Conjunctive queries (with equality unless cq_only).
Term cqe_to_algebra(const Formula& f, bool cq_only = false, Trace* trace = nullptr);
Formula algebra_to_cqe(const Term& t, bool cq_only = false, Trace* trace = nullptr);

// Moves the existential quantifiers of an ∃/∧ formula to the front, renaming
// bound variables apart.
Formula prenex_existential(const Formula& f);

}  // namespace gra::translate
