#include "gra/decide/router.hpp"

#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"
#include "gra/translate/translate.hpp"

namespace gra {

namespace {

Structure full_singleton(const Vocabulary& vocab) {
    Structure m(Domain::of_size(1));
    for (const auto& [name, arity] : vocab) m.add_relation(name, ADRelation::full(1, arity));
    return m;
}

template <class Input>
SatVerdict cqe_verdict(const Input& in, const Vocabulary& vocab) {
    SatVerdict v;
    v.kind = VerdictKind::sat;
    v.method = "cqe";
    v.witness = full_singleton(vocab);
    if (!witness_verifies(in, *v.witness)) throw std::logic_error("conjunctive query witness does not verify");
    return v;
}

const char* method_names[] = {"auto", "automaton", "cqe", "qf", "herbrand", "fragment-f", "oracle"};

}  // namespace

std::optional<SatMethod> parse_sat_method(const std::string& name) {
    for (std::size_t i = 0; i < std::size(method_names); ++i) {
        if (name == method_names[i]) return static_cast<SatMethod>(i);
    }
    return std::nullopt;
}

std::string to_string(SatMethod m) { return method_names[static_cast<std::size_t>(m)]; }

SatVerdict sat_cqe(const Term& t) {
    if (!classify_term(t).cqe) throw Error(ErrorKind::not_in_fragment, "not a term over {e, p, s, I, J, ex}");
    return cqe_verdict(t, term_vocabulary(t));
}

SatVerdict sat_cqe(const Formula& f) {
    if (!classify_formula(f).cqe) throw Error(ErrorKind::not_in_fragment, "not a conjunctive query with equality");
    return cqe_verdict(f, formula_vocabulary(f));
}

SatVerdict sat_router(const Term& t, SatMethod method, const OracleOptions& opts) {
    term_vocabulary(t);
    const TermReport r = classify_term(t);
    if (method == SatMethod::automatic) {
        if (r.join_free) return sat_joinfree(t);
        if (r.cqe) return sat_cqe(t);
        if (r.quantifier_free) return sat_quantifier_free(t, opts);
        if (r.fragment_f) return sat_fragment_f(t, opts);
        return sat_oracle(t, opts);
    }
    switch (method) {
        case SatMethod::automaton: return sat_joinfree(t);
        case SatMethod::cqe: return sat_cqe(t);
        case SatMethod::qf: return sat_quantifier_free(t, opts);
        case SatMethod::fragment_f: return sat_fragment_f(t, opts);
        case SatMethod::oracle: return sat_oracle(t, opts);
        case SatMethod::herbrand: {
            if (t->arity != 0) throw Error(ErrorKind::not_in_fragment, "only arity-0 terms translate to sentences");
            SatVerdict v = sat_herbrand(herbrand_from_formula(translate::gra_to_fo(t)), opts);
            if (v.witness) v.witness = restrict_to(*v.witness, term_vocabulary(t));
            return v;
        }
        case SatMethod::automatic: break;
    }
    throw Error(ErrorKind::usage, "unknown method");
}

SatVerdict sat_router(const Formula& f, SatMethod method, const OracleOptions& opts) {
    formula_vocabulary(f);
    const FragmentReport r = classify_formula(f);
    if (method == SatMethod::automatic) {
        if (r.cqe) return sat_cqe(f);
        if (r.quantifier_free) return sat_quantifier_free(f, opts);
        if (r.herbrand) return sat_herbrand(herbrand_from_formula(f), opts);
        if (r.fragment_f) return sat_fragment_f(f, opts);
        return sat_oracle(f, opts);
    }
    switch (method) {
        case SatMethod::automaton: throw Error(ErrorKind::not_in_fragment, "the automaton works on terms");
        case SatMethod::cqe: return sat_cqe(f);
        case SatMethod::qf: return sat_quantifier_free(f, opts);
        case SatMethod::herbrand: return sat_herbrand(herbrand_from_formula(f), opts);
        case SatMethod::fragment_f: return sat_fragment_f(f, opts);
        case SatMethod::oracle: return sat_oracle(f, opts);
        case SatMethod::automatic: break;
    }
    throw Error(ErrorKind::usage, "unknown method");
}

}  // namespace gra
