#include "gra/decide/verdict.hpp"

namespace gra {

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::sat: return "SAT";
        case VerdictKind::unsat: return "UNSAT";
        case VerdictKind::unsat_up_to_bound: return "UNSAT_UP_TO_BOUND";
    }
    return "?";
}

bool witness_verifies(const Term& t, const Structure& m) { return !evaluate(t, m).empty(); }

bool witness_verifies(const Formula& f, const Structure& m) { return !fo_evaluate(f, m).empty(); }

Structure restrict_to(const Structure& m, const Vocabulary& vocab) {
    Structure out(m.domain());
    for (const auto& [name, arity] : vocab) {
        const ADRelation* r = m.find(name);
        if (r && r->arity() == arity) {
            out.add_relation(name, *r);
        } else {
            out.add_relation(name, ADRelation(m.domain().size(), arity));
        }
    }
    return out;
}

}  // namespace gra
