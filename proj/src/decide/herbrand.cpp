#include "gra/decide/herbrand.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"

namespace gra {

namespace {

HerbrandLiteral literal_of(const Formula& f) {
    HerbrandLiteral l;
    Formula x = f;
    if (x->kind == FKind::Not) {
        l.positive = false;
        x = x->a;
    }
    if (x->kind == FKind::Equal) {
        l.equality = true;
    } else if (x->kind != FKind::Atom) {
        throw Error(ErrorKind::not_in_fragment, "matrix must be a conjunction of literals");
    }
    l.name = x->name;
    l.args = x->args;
    return l;
}

Formula literal_formula(const HerbrandLiteral& l) {
    Formula a = l.equality ? fo::eq(l.args[0], l.args[1]) : fo::atom(l.name, l.args);
    return l.positive ? a : fo::neg(a);
}

std::size_t position(const HerbrandSentence& h, Var v) {
    for (std::size_t i = 0; i < h.prefix.size(); ++i) {
        if (h.prefix[i].second == v) return i;
    }
    throw Error(ErrorKind::not_in_fragment, "variable " + var_name(v) + " is not quantified");
}

std::vector<Var> prefix_vars(const HerbrandSentence& h) {
    std::vector<Var> vs;
    for (const auto& q : h.prefix) vs.push_back(q.second);
    std::sort(vs.begin(), vs.end());
    return vs;
}

// First-order terms over Skolem functions for the clash test.
struct STerm {
    int var = -1;  // universal variable id, or -1 for a function application
    std::string fn;
    std::vector<STerm> args;
};

using Subst = std::map<int, STerm>;

const STerm& walk(const STerm& t, const Subst& s) {
    const STerm* cur = &t;
    while (cur->var >= 0) {
        auto it = s.find(cur->var);
        if (it == s.end()) break;
        cur = &it->second;
    }
    return *cur;
}

bool occurs(int v, const STerm& t, const Subst& s) {
    const STerm& w = walk(t, s);
    if (w.var >= 0) return w.var == v;
    return std::any_of(w.args.begin(), w.args.end(), [&](const STerm& a) { return occurs(v, a, s); });
}

bool unify(const STerm& a, const STerm& b, Subst& s) {
    const STerm& x = walk(a, s);
    const STerm& y = walk(b, s);
    if (x.var >= 0 && y.var >= 0 && x.var == y.var) return true;
    if (x.var >= 0) {
        if (occurs(x.var, y, s)) return false;
        s[x.var] = y;
        return true;
    }
    if (y.var >= 0) return unify(y, x, s);
    if (x.fn != y.fn || x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (!unify(x.args[i], y.args[i], s)) return false;
    }
    return true;
}

std::map<Var, STerm> skolem_terms(const HerbrandSentence& h, int side) {
    std::map<Var, STerm> out;
    std::vector<STerm> universals;
    for (const auto& [q, v] : h.prefix) {
        STerm t;
        if (q == Quantifier::forall) {
            t.var = static_cast<int>(v) * 2 + side;
            universals.push_back(t);
        } else {
            t.fn = "f" + std::to_string(v);
            t.args = universals;
        }
        out[v] = t;
    }
    return out;
}

}  // namespace

HerbrandSentence herbrand_from_formula(const Formula& f) {
    if (!classify_formula(f).herbrand) {
        throw Error(ErrorKind::not_in_fragment, "not a relational Herbrand sentence");
    }
    HerbrandSentence h;
    Formula body = f;
    while (body->kind == FKind::Exists || body->kind == FKind::Forall) {
        h.prefix.emplace_back(body->kind == FKind::Exists ? Quantifier::exists : Quantifier::forall, body->var);
        body = body->a;
    }
    std::vector<Formula> lits;
    flatten_conjunction(body, lits);
    for (const auto& l : lits) h.matrix.push_back(literal_of(l));
    return h;
}

Formula herbrand_to_formula(const HerbrandSentence& h) {
    std::vector<Formula> lits;
    for (const auto& l : h.matrix) lits.push_back(literal_formula(l));
    if (lits.empty()) {
        const Var v = h.prefix.empty() ? 1 : h.prefix.front().second;
        lits.push_back(fo::eq(v, v));
        if (h.prefix.empty()) {
            return fo::exists(v, lits[0]);
        }
    }
    Formula out = fo::conj_all(lits);
    for (auto it = h.prefix.rbegin(); it != h.prefix.rend(); ++it) {
        out = it->first == Quantifier::exists ? fo::exists(it->second, out) : fo::forall(it->second, out);
    }
    return out;
}

std::string print_herbrand(const HerbrandSentence& h) { return print_formula(herbrand_to_formula(h)); }

void validate_herbrand(const HerbrandSentence& h) {
    std::set<Var> seen;
    for (const auto& [q, v] : h.prefix) {
        if (v == 0) throw Error(ErrorKind::not_in_fragment, "variable indices start at 1");
        if (!seen.insert(v).second) throw Error(ErrorKind::not_in_fragment, var_name(v) + " is quantified twice");
    }
    for (const auto& l : h.matrix) {
        if (l.equality && l.args.size() != 2) throw Error(ErrorKind::not_in_fragment, "equality needs two arguments");
        for (Var v : l.args) {
            if (!seen.count(v)) throw Error(ErrorKind::not_in_fragment, var_name(v) + " is not quantified");
        }
    }
}

bool herbrand_one_element(const HerbrandSentence& h) {
    std::set<std::string> pos, neg;
    for (const auto& l : h.matrix) {
        if (l.equality) {
            if (!l.positive) return false;
            continue;
        }
        (l.positive ? pos : neg).insert(l.name);
    }
    return std::none_of(pos.begin(), pos.end(), [&](const std::string& n) { return neg.count(n) > 0; });
}

EqualityElimination herbrand_eliminate_equality(const HerbrandSentence& input) {
    validate_herbrand(input);
    EqualityElimination out;
    HerbrandSentence h = input;
    for (;;) {
        // Orient every equality so that its second variable is quantified inside the first.
        std::erase_if(h.matrix, [](const HerbrandLiteral& l) {
            return l.equality && l.positive && l.args[0] == l.args[1];
        });
        for (auto& l : h.matrix) {
            if (l.equality && position(h, l.args[0]) > position(h, l.args[1])) std::swap(l.args[0], l.args[1]);
        }
        bool forced_one = false;
        for (const auto& l : h.matrix) {
            if (!l.equality) continue;
            if (!l.positive && l.args[0] == l.args[1]) {
                out.outcome = EqualityElimination::Outcome::unsat;
                return out;
            }
            const bool inner_universal = h.prefix[position(h, l.args[1])].first == Quantifier::forall;
            if (inner_universal && !l.positive) {
                out.outcome = EqualityElimination::Outcome::unsat;
                return out;
            }
            if (inner_universal) forced_one = true;
        }
        if (forced_one) {
            out.outcome = EqualityElimination::Outcome::size_one;
            out.one_element = herbrand_one_element(h);
            return out;
        }
        auto it = std::find_if(h.matrix.begin(), h.matrix.end(), [](const HerbrandLiteral& l) { return l.equality; });
        if (it == h.matrix.end()) break;
        const std::size_t at = static_cast<std::size_t>(it - h.matrix.begin());
        const Var x = it->args[0];
        const Var y = it->args[1];
        if (!it->positive) {
            if (out.fresh_symbol.empty()) {
                std::set<std::string> names;
                for (const auto& l : h.matrix) names.insert(l.name);
                out.fresh_symbol = "E";
                for (int i = 1; names.count(out.fresh_symbol); ++i) out.fresh_symbol = "E" + std::to_string(i);
                const Var z = fresh_variable(prefix_vars(h));
                h.prefix.insert(h.prefix.begin(), {Quantifier::forall, z});
                h.matrix.push_back(HerbrandLiteral{true, false, out.fresh_symbol, {z, z}});
            }
            h.matrix[at] = HerbrandLiteral{false, false, out.fresh_symbol, {x, y}};
            continue;
        }
        h.matrix.erase(h.matrix.begin() + static_cast<std::ptrdiff_t>(at));
        std::erase_if(h.prefix, [&](const auto& q) { return q.second == y; });
        for (auto& l : h.matrix) std::replace(l.args.begin(), l.args.end(), y, x);
    }
    out.outcome = EqualityElimination::Outcome::residue;
    out.residue = std::move(h);
    return out;
}

bool herbrand_clash(const HerbrandSentence& h) {
    const auto left = skolem_terms(h, 0);
    const auto right = skolem_terms(h, 1);
    for (const auto& a : h.matrix) {
        if (!a.positive || a.equality) continue;
        for (const auto& b : h.matrix) {
            if (b.positive || b.equality || b.name != a.name || b.args.size() != a.args.size()) continue;
            Subst s;
            bool ok = true;
            for (std::size_t i = 0; ok && i < a.args.size(); ++i) {
                ok = unify(left.at(a.args[i]), right.at(b.args[i]), s);
            }
            if (ok) return true;
        }
    }
    return false;
}

bool herbrand_refuted(const HerbrandSentence& h) {
    const auto e = herbrand_eliminate_equality(h);
    switch (e.outcome) {
        case EqualityElimination::Outcome::unsat: return true;
        case EqualityElimination::Outcome::size_one: return !e.one_element;
        case EqualityElimination::Outcome::residue: return herbrand_clash(e.residue);
    }
    return false;
}

SatVerdict sat_herbrand(const HerbrandSentence& h, const OracleOptions& opts) {
    validate_herbrand(h);
    const Formula original = herbrand_to_formula(h);
    const Vocabulary vocab = formula_vocabulary(original);
    const std::size_t bound = std::max<std::size_t>(2, h.prefix.size());
    SatVerdict v;
    v.method = "herbrand";
    auto singleton = [&](const HerbrandSentence& s) {
        Structure m(Domain::of_size(1));
        for (const auto& [name, arity] : vocab) {
            const bool on = std::any_of(s.matrix.begin(), s.matrix.end(), [&](const HerbrandLiteral& l) {
                return !l.equality && l.positive && l.name == name;
            });
            m.add_relation(name, on ? ADRelation::full(1, arity) : ADRelation(1, arity));
        }
        return m;
    };
    const auto e = herbrand_eliminate_equality(h);
    switch (e.outcome) {
        case EqualityElimination::Outcome::unsat:
            v.kind = VerdictKind::unsat;
            v.note = "an inequality can never hold";
            return v;
        case EqualityElimination::Outcome::size_one:
            if (!e.one_element) {
                v.kind = VerdictKind::unsat;
                v.note = "only one-element models are possible and there is none";
                return v;
            }
            v.kind = VerdictKind::sat;
            v.witness = singleton(h);
            v.note = "one-element model";
            break;
        case EqualityElimination::Outcome::residue: {
            const HerbrandSentence& r = e.residue;
            if (r.matrix.empty()) {
                v.kind = VerdictKind::sat;
                v.witness = singleton(r);
                break;
            }
            if (herbrand_clash(r)) {
                v.kind = VerdictKind::unsat;
                v.note = "complementary literals unify after Skolemization";
                return v;
            }
            OracleOptions o = opts;
            o.max_domain = bound;
            SatVerdict found = sat_oracle(herbrand_to_formula(r), o);
            v.bound = bound;
            if (found.kind != VerdictKind::sat) {
                v.kind = VerdictKind::unsat_up_to_bound;
                v.note = "the equality-free residue has a Herbrand model but none within the bound";
                return v;
            }
            v.kind = VerdictKind::sat;
            v.witness = restrict_to(*found.witness, vocab);
            break;
        }
    }
    if (!witness_verifies(original, *v.witness)) {
        throw std::logic_error("Herbrand witness does not verify");
    }
    return v;
}

}  // namespace gra
