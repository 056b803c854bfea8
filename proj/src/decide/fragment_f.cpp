#include "gra/decide/fragment_f.hpp"

#include <algorithm>

#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"
#include "gra/translate/translate.hpp"

namespace gra {

namespace {

bool free_in(const Formula& f, Var v) { return std::binary_search(f->free.begin(), f->free.end(), v); }

Formula nnf(const Formula& f, bool positive) {
    switch (f->kind) {
        case FKind::Atom:
        case FKind::Equal: return positive ? f : fo::neg(f);
        case FKind::Not: return nnf(f->a, !positive);
        case FKind::And:
            return positive ? fo::conj(nnf(f->a, true), nnf(f->b, true)) : fo::disj(nnf(f->a, false), nnf(f->b, false));
        case FKind::Or:
            return positive ? fo::disj(nnf(f->a, true), nnf(f->b, true)) : fo::conj(nnf(f->a, false), nnf(f->b, false));
        case FKind::Implies:
            return positive ? fo::disj(nnf(f->a, false), nnf(f->b, true)) : fo::conj(nnf(f->a, true), nnf(f->b, false));
        case FKind::Exists:
            return positive ? fo::exists(f->var, nnf(f->a, true)) : fo::forall(f->var, nnf(f->a, false));
        case FKind::Forall:
            return positive ? fo::forall(f->var, nnf(f->a, true)) : fo::exists(f->var, nnf(f->a, false));
    }
    return f;
}

Formula quantify(FKind q, Var x, const Formula& body) {
    if (!free_in(body, x)) return body;
    const bool ex = q == FKind::Exists;
    auto again = [&](const Formula& g) { return quantify(q, x, g); };
    if (body->kind == FKind::Or) {
        if (ex) return fo::disj(again(body->a), again(body->b));
        if (!free_in(body->b, x)) return fo::disj(again(body->a), body->b);
        if (!free_in(body->a, x)) return fo::disj(body->a, again(body->b));
    }
    if (body->kind == FKind::And) {
        if (!ex) return fo::conj(again(body->a), again(body->b));
        if (!free_in(body->b, x)) return fo::conj(again(body->a), body->b);
        if (!free_in(body->a, x)) return fo::conj(body->a, again(body->b));
    }
    return ex ? fo::exists(x, body) : fo::forall(x, body);
}

Formula push(const Formula& f) {
    switch (f->kind) {
        case FKind::And: return fo::conj(push(f->a), push(f->b));
        case FKind::Or: return fo::disj(push(f->a), push(f->b));
        case FKind::Exists:
        case FKind::Forall: return quantify(f->kind, f->var, push(f->a));
        default: return f;
    }
}

// Appends a quantifier chain over one literal to h, renaming its bound
// variables to fresh ones.
void add_unit(const Formula& unit, HerbrandSentence& h, Var& next) {
    std::vector<std::pair<Var, Var>> renaming;
    Formula x = unit;
    while (x->kind == FKind::Exists || x->kind == FKind::Forall) {
        const Var fresh = next++;
        h.prefix.emplace_back(x->kind == FKind::Exists ? Quantifier::exists : Quantifier::forall, fresh);
        renaming.emplace_back(x->var, fresh);
        x = x->a;
    }
    HerbrandLiteral l;
    if (x->kind == FKind::Not) {
        l.positive = false;
        x = x->a;
    }
    if (x->kind != FKind::Atom && x->kind != FKind::Equal) {
        throw Error(ErrorKind::not_in_fragment, "quantifier scope is not a single literal");
    }
    l.equality = x->kind == FKind::Equal;
    l.name = x->name;
    l.args = x->args;
    for (Var& a : l.args) {
        // The innermost binder of a repeated variable wins.
        for (auto it = renaming.rbegin(); it != renaming.rend(); ++it) {
            if (it->first == a) {
                a = it->second;
                break;
            }
        }
    }
    h.matrix.push_back(std::move(l));
}

class BranchSearch {
public:
    BranchSearch(const Formula& f, const OracleOptions& opts) : opts_(opts), free_(f->free) {
        std::vector<Var> vars = all_variables(f);
        first_fresh_ = vars.empty() ? 1 : vars.back() + 1;
    }

    bool run(const Formula& root) {
        pending_.push_back(root);
        return search();
    }

    std::vector<SatVerdict> outcomes;
    std::size_t refuted = 0;

private:
    HerbrandSentence sentence() const {
        HerbrandSentence h;
        for (Var v : free_) h.prefix.emplace_back(Quantifier::exists, v);
        Var next = first_fresh_;
        for (const auto& u : committed_) add_unit(u, h, next);
        return h;
    }

    bool committed(const Formula& f) const {
        return std::any_of(committed_.begin(), committed_.end(), [&](const Formula& c) { return equal(c, f); });
    }

    bool search() {
        if (pending_.empty()) {
            outcomes.push_back(sat_herbrand(sentence(), opts_));
            return outcomes.back().kind == VerdictKind::sat;
        }
        const Formula f = pending_.back();
        pending_.pop_back();
        bool found = false;
        if (f->kind == FKind::And) {
            pending_.push_back(f->b);
            pending_.push_back(f->a);
            found = search();
            pending_.pop_back();
            pending_.pop_back();
        } else if (f->kind == FKind::Or) {
            std::vector<Formula> sides{f->a, f->b};
            if (committed(f->b)) sides = {f->b};
            if (committed(f->a)) sides = {f->a};
            for (const auto& side : sides) {
                pending_.push_back(side);
                found = search();
                pending_.pop_back();
                if (found) break;
            }
        } else if (committed(f)) {
            found = search();
        } else {
            committed_.push_back(f);
            if (herbrand_refuted(sentence())) {
                ++refuted;
            } else {
                found = search();
            }
            committed_.pop_back();
        }
        pending_.push_back(f);
        return found;
    }

    OracleOptions opts_;
    std::vector<Var> free_;
    Var first_fresh_ = 1;
    std::vector<Formula> pending_;
    std::vector<Formula> committed_;
};

}  // namespace

Formula negation_normal_form(const Formula& f) { return nnf(f, true); }

Formula push_quantifiers(const Formula& f) { return push(f); }

SatVerdict sat_fragment_f(const Formula& f, const OracleOptions& opts) {
    if (!classify_formula(f).fragment_f) {
        throw Error(ErrorKind::not_in_fragment, "a conjunction or disjunction shares free variables");
    }
    const Formula pushed = push(nnf(f, true));
    BranchSearch search(f, opts);
    const bool sat = search.run(pushed);
    SatVerdict v;
    v.method = "fragment-f";
    if (sat) {
        SatVerdict& win = search.outcomes.back();
        v.kind = VerdictKind::sat;
        v.witness = restrict_to(*win.witness, formula_vocabulary(f));
        v.bound = win.bound;
        if (!witness_verifies(f, *v.witness)) throw std::logic_error("fragment witness does not verify");
        return v;
    }
    v.kind = VerdictKind::unsat;
    for (const auto& o : search.outcomes) {
        if (o.kind == VerdictKind::unsat_up_to_bound) {
            v.kind = VerdictKind::unsat_up_to_bound;
            v.bound = std::max(v.bound.value_or(0), o.bound.value_or(0));
        }
    }
    v.note = std::to_string(search.outcomes.size()) + " branches decided, " + std::to_string(search.refuted) +
             " cut off early";
    return v;
}

SatVerdict sat_fragment_f(const Term& t, const OracleOptions& opts) {
    if (!classify_term(t).fragment_f) {
        throw Error(ErrorKind::not_in_fragment, "fragment procedure needs a term over {e, p, s, not, J, ex}");
    }
    SatVerdict v = sat_fragment_f(translate::gra_to_fo(t), opts);
    if (v.witness) {
        v.witness = restrict_to(*v.witness, term_vocabulary(t));
        if (!witness_verifies(t, *v.witness)) throw std::logic_error("fragment witness does not verify on the term");
    }
    return v;
}

}  // namespace gra
