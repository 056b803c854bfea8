#include "gra/decide/procedures.hpp"

#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"
#include "gra/translate/translate.hpp"

namespace gra {

namespace {

// Scanner state: the innermost I/ex seen so far (outermost first), the
// negation parity outside it and the parity since.
struct Scan {
    Op fn = Op::Eq;  // Eq: none yet
    bool outside = false;
    bool inside = false;

    void feed(Op op) {
        switch (op) {
            case Op::I:
            case Op::Ex:
                fn = op;
                outside = outside != inside;
                inside = false;
                break;
            case Op::Not: inside = !inside; break;
            default: break;
        }
    }
};

std::optional<Structure> small_witness(const Term& t) {
    const auto vocab = term_vocabulary(t);
    for (std::size_t n = 1; n <= 2; ++n) {
        for (bool full : {true, false}) {
            Structure m(Domain::of_size(n));
            for (const auto& [name, arity] : vocab) {
                m.add_relation(name, full ? ADRelation::full(n, arity) : ADRelation(n, arity));
            }
            if (witness_verifies(t, m)) return m;
        }
    }
    return std::nullopt;
}

}  // namespace

SatVerdict sat_joinfree(const Term& t) {
    if (!classify_term(t).join_free) {
        throw Error(ErrorKind::not_in_fragment, "the automaton only accepts terms over {e, p, s, I, not, ex}");
    }
    Scan scan;
    Term x = t;
    while (x->op != Op::Eq && x->op != Op::Rel) {
        scan.feed(x->op);
        x = x->kids[0];
    }
    bool sat = true;
    if (x->op == Op::Eq && scan.fn != Op::Eq) {
        const bool r = scan.outside;
        const bool q = scan.inside;
        sat = scan.fn == Op::I ? q == r : (!r || q);
    }
    SatVerdict v;
    v.method = "automaton";
    if (!sat) {
        v.kind = VerdictKind::unsat;
        return v;
    }
    v.kind = VerdictKind::sat;
    v.witness = small_witness(t);
    if (!v.witness) throw std::logic_error("automaton accepted a term without a small model");
    return v;
}

SatVerdict sat_quantifier_free(const Term& t, const OracleOptions& opts) {
    if (!classify_term(t).quantifier_free) {
        throw Error(ErrorKind::not_in_fragment, "quantifier-free procedure needs a term over {e, p, s, I, not, J}");
    }
    const Formula f = translate::gra_to_fo(t);
    OracleOptions o = opts;
    o.max_domain = std::max<std::size_t>(1, t->arity);
    SatVerdict v = sat_oracle(f, o);
    v.method = "qf-bounded";
    if (v.kind != VerdictKind::sat) {
        v.kind = VerdictKind::unsat;
        v.note = "no model of size at most " + std::to_string(o.max_domain) + ", which is complete here";
    }
    return v;
}

SatVerdict sat_quantifier_free(const Formula& f, const OracleOptions& opts) {
    if (!classify_formula(f).quantifier_free) {
        throw Error(ErrorKind::not_in_fragment, "formula has quantifiers");
    }
    OracleOptions o = opts;
    o.max_domain = std::max<std::size_t>(1, f->free.size());
    SatVerdict v = sat_oracle(f, o);
    v.method = "qf-bounded";
    if (v.kind != VerdictKind::sat) {
        v.kind = VerdictKind::unsat;
        v.note = "no model of size at most " + std::to_string(o.max_domain) + ", which is complete here";
    }
    return v;
}

}  // namespace gra
