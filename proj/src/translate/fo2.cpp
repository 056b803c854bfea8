#include "gra/translate/fo2.hpp"

#include <algorithm>
#include <optional>

#include "gra/error.hpp"

namespace gra::translate {

namespace {

Formula disjunction(const std::vector<Formula>& parts) {
    if (parts.size() == 1) return parts[0];
    std::vector<Formula> negated;
    for (const auto& p : parts) negated.push_back(p->kind == FKind::Not ? p->a : fo::neg(p));
    return fo::neg(fo::conj_all(negated));
}

bool has(const std::vector<Var>& xs, Var v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

bool is_unit(const Formula& f) {
    return f->kind == FKind::Atom || f->kind == FKind::Equal || f->kind == FKind::Exists;
}

// Units of f (atoms and quantified subformulas) whose only free variable is u.
void collect_units(const Formula& f, Var u, std::vector<Formula>& out) {
    if (is_unit(f)) {
        if (f->free.size() == 1 && f->free[0] == u &&
            std::none_of(out.begin(), out.end(), [&](const Formula& g) { return equal(f, g); })) {
            out.push_back(f);
        }
        return;
    }
    if (f->a) collect_units(f->a, u, out);
    if (f->b) collect_units(f->b, u, out);
}

// f with the units fixed by `values`; nullopt stands for a constant given by `constant`.
std::optional<Formula> fix_units(const Formula& f, const std::vector<Formula>& units, const std::vector<bool>& values,
                                 bool& constant) {
    if (is_unit(f)) {
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (equal(f, units[i])) {
                constant = values[i];
                return std::nullopt;
            }
        }
        return f;
    }
    if (f->kind == FKind::Not) {
        auto a = fix_units(f->a, units, values, constant);
        if (!a) {
            constant = !constant;
            return std::nullopt;
        }
        return fo::neg(*a);
    }
    bool ca = false, cb = false;
    auto a = fix_units(f->a, units, values, ca);
    if (!a && !ca) {
        constant = false;
        return std::nullopt;
    }
    auto b = fix_units(f->b, units, values, cb);
    if (!b && !cb) {
        constant = false;
        return std::nullopt;
    }
    if (!a && !b) {
        constant = true;
        return std::nullopt;
    }
    if (!a) return b;
    if (!b) return a;
    return fo::conj(*a, *b);
}

// ∃v η where η is separated. Every case split over the units in the other
// variable alone gives one disjunct ∃v α ∧ β, so no conjunction is left
// joining a formula in v only with one in the other variable only.
Formula separate_exists(Var v, const Formula& body) {
    if (!has(body->free, v)) return body;
    Var u = 0;
    for (Var w : all_variables(body)) {
        if (w != v) u = w;
    }
    std::vector<Formula> units;
    if (u != 0) collect_units(body, u, units);
    std::vector<Formula> disjuncts;
    std::vector<bool> values(units.size());
    for (std::size_t bits = 0; bits < (std::size_t{1} << units.size()); ++bits) {
        std::vector<Formula> parts;
        for (std::size_t i = 0; i < units.size(); ++i) {
            values[i] = (bits >> i) & 1u;
            parts.push_back(values[i] ? units[i] : fo::neg(units[i]));
        }
        bool constant = false;
        const auto rest = fix_units(body, units, values, constant);
        if (!rest && !constant) continue;
        if (rest) parts.insert(parts.begin(), fo::exists(v, *rest));
        disjuncts.push_back(fo::conj_all(parts));
    }
    if (disjuncts.empty()) return fo::exists(v, fo::neg(fo::eq(v, v)));
    return disjunction(disjuncts);
}

Formula separate(const Formula& f) {
    switch (f->kind) {
        case FKind::Atom:
        case FKind::Equal: return f;
        case FKind::Not: return fo::neg(separate(f->a));
        case FKind::And: return fo::conj(separate(f->a), separate(f->b));
        case FKind::Exists: return separate_exists(f->var, separate(f->a));
        default: throw Error(ErrorKind::not_in_fragment, "formula must be normalized first");
    }
}

Term atom_term(const Formula& f) {
    const auto& a = f->args;
    if (f->kind == FKind::Equal) return a[0] == a[1] ? term::ex(term::e()) : term::e();
    switch (a.size()) {
        case 0:
        case 1: return term::rel(f->name, a.size());
        case 2: {
            const Term r = term::rel(f->name, 2);
            if (a[0] == a[1]) return term::ex(term::sint(r, term::e()));
            return a[0] < a[1] ? r : term::s(r);
        }
        default: throw Error(ErrorKind::not_in_fragment, "symbol '" + f->name + "' has arity above two");
    }
}

Term fo2_term(const Formula& f, Trace* trace) {
    Term out;
    switch (f->kind) {
        case FKind::Atom:
        case FKind::Equal: out = atom_term(f); break;
        case FKind::Not: out = term::neg(fo2_term(f->a, trace)); break;
        case FKind::And: {
            const Term l = fo2_term(f->a, trace);
            const Term r = fo2_term(f->b, trace);
            const auto& fa = f->a->free;
            const auto& fb = f->b->free;
            if (fa.empty() || fb.empty() || fa.size() == fb.size() || f->free.size() < 2) {
                if (!fa.empty() && !fb.empty() && fa != fb) {
                    throw Error(ErrorKind::not_in_fragment, "conjunction of formulas in different single variables");
                }
                out = term::sint(l, r);
                break;
            }
            const Var x = f->free[0];
            // One side has both variables, the other only one of them.
            const auto& single = fa.size() == 1 ? fa : fb;
            if (single[0] != x) {
                out = term::sint(l, r);
            } else if (fa.size() == 2) {
                out = term::s(term::sint(term::s(l), r));
            } else {
                out = term::s(term::sint(l, term::s(r)));
            }
            break;
        }
        case FKind::Exists: {
            const Term body = fo2_term(f->a, trace);
            const auto& free = f->a->free;
            if (!has(free, f->var)) {
                out = body;
            } else if (free.size() == 2 && f->var == free[0]) {
                out = term::ex(term::s(body));
            } else {
                out = term::ex(body);
            }
            break;
        }
        default: throw Error(ErrorKind::not_in_fragment, "formula must be normalized first");
    }
    if (trace) trace->step(print_formula(f) + "  =>  " + print_term(out));
    return out;
}

void check_fo2_sentence(const Formula& f) {
    if (!is_sentence(f)) throw Error(ErrorKind::not_in_fragment, "only FO2 sentences are translated");
    if (all_variables(f).size() > 2) throw Error(ErrorKind::not_in_fragment, "more than two variables");
    for (const auto& [name, arity] : formula_vocabulary(f)) {
        if (arity > 2) throw Error(ErrorKind::not_in_fragment, "symbol '" + name + "' has arity above two");
    }
}

}  // namespace

Formula fo2_separate(const Formula& f) {
    check_fo2_sentence(f);
    return separate(normalize(f));
}

Term fo2_to_algebra(const Formula& f, Trace* trace) {
    const Formula sep = fo2_separate(f);
    if (trace) trace->step("separated: " + print_formula(sep));
    return fo2_term(sep, trace);
}

namespace {

Formula fo2_formula(const Term& t, const std::vector<Var>& xs, Trace* trace) {
    Formula out;
    switch (t->op) {
        case Op::Eq: out = fo::eq(xs[0], xs[1]); break;
        case Op::Rel:
            if (t->arity > 2) throw Error(ErrorKind::not_in_fragment, "symbol '" + t->name + "' has arity above two");
            out = fo::atom(t->name, xs);
            break;
        case Op::S: {
            std::vector<Var> ys = xs;
            if (ys.size() == 2) std::swap(ys[0], ys[1]);
            out = fo2_formula(t->kids[0], ys, trace);
            break;
        }
        case Op::Not: out = fo::neg(fo2_formula(t->kids[0], xs, trace)); break;
        case Op::Sint: {
            const std::size_t a = t->kids[0]->arity;
            const std::size_t b = t->kids[1]->arity;
            std::vector<Var> l(xs.end() - static_cast<std::ptrdiff_t>(a), xs.end());
            std::vector<Var> r(xs.end() - static_cast<std::ptrdiff_t>(b), xs.end());
            out = fo::conj(fo2_formula(t->kids[0], l, trace), fo2_formula(t->kids[1], r, trace));
            break;
        }
        case Op::Ex: {
            const Term& s = t->kids[0];
            if (s->arity == 0) {
                out = fo2_formula(s, xs, trace);
                break;
            }
            if (s->arity > 2) throw Error(ErrorKind::not_in_fragment, "subterm of arity above two");
            const Var y = xs.empty() || xs[0] != 1 ? 1 : 2;
            std::vector<Var> ys = xs;
            ys.push_back(y);
            out = fo::exists(y, fo2_formula(s, ys, trace));
            break;
        }
        default:
            throw Error(ErrorKind::not_in_fragment,
                        std::string("operator '") + (t->op == Op::Custom ? t->name : op_name(t->op)) +
                            "' is outside {e, s, not, sint, ex}");
    }
    if (trace) trace->step(print_term(t) + "  =>  " + print_formula(out));
    return out;
}

}  // namespace

Formula algebra_to_fo2(const Term& t, Trace* trace) {
    if (t->arity != 0) throw Error(ErrorKind::arity, "only arity-0 terms translate to FO2 sentences");
    term_vocabulary(t);
    return fo2_formula(t, {}, trace);
}

}  // namespace gra::translate
