#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gra/relalg/registry.hpp"
#include "gra/relalg/structure.hpp"

namespace gra {

enum class Op { Eq, Rel, P, S, I, Not, Ex, J, Cup, Cap, Minus, Sint, H, Custom };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// Immutable algebra term. Arity and node count are fixed at construction.
struct TermNode {
    Op op;
    std::string name;  // symbol for Rel, operator name for Custom
    std::vector<Term> kids;
    std::size_t arity = 0;
    std::size_t size = 1;
    std::shared_ptr<const OperatorDescriptor> custom;
};

bool is_unary(Op op) noexcept;
bool is_binary(Op op) noexcept;

// Spelling used by the term grammar ("p", "not", "sint", ...).
const char* op_name(Op op) noexcept;

namespace term {

Term e();
Term rel(const std::string& name, std::size_t arity);
Term unary(Op op, Term t);
Term binary(Op op, Term l, Term r);
Term custom(std::shared_ptr<const OperatorDescriptor> op, std::vector<Term> kids);

inline Term p(Term t) { return unary(Op::P, std::move(t)); }
inline Term s(Term t) { return unary(Op::S, std::move(t)); }
inline Term I(Term t) { return unary(Op::I, std::move(t)); }
inline Term neg(Term t) { return unary(Op::Not, std::move(t)); }
inline Term ex(Term t) { return unary(Op::Ex, std::move(t)); }
inline Term J(Term l, Term r) { return binary(Op::J, std::move(l), std::move(r)); }
inline Term cup(Term l, Term r) { return binary(Op::Cup, std::move(l), std::move(r)); }
inline Term cap(Term l, Term r) { return binary(Op::Cap, std::move(l), std::move(r)); }
inline Term minus(Term l, Term r) { return binary(Op::Minus, std::move(l), std::move(r)); }
inline Term sint(Term l, Term r) { return binary(Op::Sint, std::move(l), std::move(r)); }
inline Term H(Term l, Term r) { return binary(Op::H, std::move(l), std::move(r)); }

// Applies a word over {p, s} (leftmost letter outermost) to t.
Term apply_word(const std::string& word, Term t);

// ⊤₀ and ⊥₀ as terms over the empty vocabulary.
Term top0();
Term bottom0();

}  // namespace term

bool equal(const Term& a, const Term& b);

// Symbols used by t with their arities; throws ErrorKind::arity when a symbol
// occurs with two different arities.
Vocabulary term_vocabulary(const Term& t);

// Operator names occurring in t (grammar spelling), plus whether the equality
// constant occurs.
struct TermSignature {
    std::set<std::string> ops;
    bool uses_e = false;
    bool uses_relations = false;
};
TermSignature term_signature(const Term& t);

// True when every operator of t is in the allowed set (grammar spellings).
bool within_signature(const Term& t, const std::set<std::string>& allowed);

ADRelation evaluate(const Term& t, const Structure& m);

std::string print_term(const Term& t);
Term parse_term(const std::string& text, const OperatorRegistry* registry = nullptr);

}  // namespace gra
