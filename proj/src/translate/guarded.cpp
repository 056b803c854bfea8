#include "gra/translate/guarded.hpp"

#include <algorithm>
#include <numeric>

#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"
#include "gra/translate/translate.hpp"

namespace gra::translate {

TermGuard compute_term_guard(const Term& t, std::size_t* visited) {
    if (visited) ++*visited;
    switch (t->op) {
        case Op::Eq: return {t, {1, 2}};
        case Op::Rel: {
            std::vector<std::size_t> pos(t->arity);
            std::iota(pos.begin(), pos.end(), std::size_t{1});
            return {t, pos};
        }
        case Op::P: {
            auto g = compute_term_guard(t->kids[0], visited);
            g.positions = permute_labels("p", g.positions);
            return g;
        }
        case Op::S: {
            auto g = compute_term_guard(t->kids[0], visited);
            g.positions = permute_labels("s", g.positions);
            return g;
        }
        case Op::Minus: {
            auto g = compute_term_guard(t->kids[0], visited);
            compute_term_guard(t->kids[1], visited);
            return g;
        }
        case Op::Sint: {
            auto l = compute_term_guard(t->kids[0], visited);
            auto r = compute_term_guard(t->kids[1], visited);
            return t->kids[0]->arity >= t->kids[1]->arity ? l : r;
        }
        case Op::Ex: {
            auto g = compute_term_guard(t->kids[0], visited);
            if (!g.positions.empty()) g.positions.pop_back();
            return g;
        }
        default:
            throw Error(ErrorKind::not_in_fragment,
                        std::string("operator '") + (t->op == Op::Custom ? t->name : op_name(t->op)) +
                            "' is outside {e, p, s, minus, sint, ex}");
    }
}

namespace {

bool is_atomic(const Formula& f) { return f->kind == FKind::Atom || f->kind == FKind::Equal; }

// Guard of an ∃-block body: relational atoms first, then x = x, then x = y.
std::optional<std::size_t> select_guard(const std::vector<Formula>& parts) {
    std::vector<Var> free;
    for (const auto& c : parts) {
        std::vector<Var> merged;
        std::set_union(free.begin(), free.end(), c->free.begin(), c->free.end(), std::back_inserter(merged));
        free = std::move(merged);
    }
    auto pick = [&](auto pred) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (is_atomic(parts[i]) && parts[i]->free == free && pred(parts[i])) return i;
        }
        return std::nullopt;
    };
    if (auto g = pick([](const Formula& a) { return a->kind == FKind::Atom; })) return g;
    if (auto g = pick([](const Formula& a) { return a->args[0] == a->args[1]; })) return g;
    return pick([](const Formula&) { return true; });
}

struct Block {
    std::vector<Var> vars;
    std::vector<Formula> parts;
    std::size_t guard = 0;
};

Block open_block(const Formula& f) {
    Block b;
    Formula body = f;
    while (body->kind == FKind::Exists) {
        b.vars.push_back(body->var);
        body = body->a;
    }
    flatten_conjunction(body, b.parts);
    auto g = select_guard(b.parts);
    if (!g) throw Error(ErrorKind::not_in_fragment, "unguarded quantification: " + print_formula(f));
    b.guard = *g;
    return b;
}

Formula rest_conjunction(const Block& b) {
    std::vector<Formula> rest;
    for (std::size_t i = 0; i < b.parts.size(); ++i) {
        if (i != b.guard) rest.push_back(b.parts[i]);
    }
    return rest.empty() ? nullptr : fo::conj_all(rest);
}

bool contains(const std::vector<Var>& xs, Var v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

}  // namespace

Formula eliminate_equality_guards(const Formula& f) {
    switch (f->kind) {
        case FKind::Atom:
        case FKind::Equal: return f;
        case FKind::Not: return fo::neg(eliminate_equality_guards(f->a));
        case FKind::And: return fo::conj(eliminate_equality_guards(f->a), eliminate_equality_guards(f->b));
        case FKind::Exists: {
            Block b = open_block(f);
            const Formula& g = b.parts[b.guard];
            if (g->kind == FKind::Equal && g->args[0] != g->args[1]) {
                const Var x = std::min(g->args[0], g->args[1]);
                const Var y = std::max(g->args[0], g->args[1]);
                const bool qx = contains(b.vars, x);
                const bool qy = contains(b.vars, y);
                Formula rest = rest_conjunction(b);
                Formula out;
                if (!qx && !qy) {
                    // The block's variables are all vacuous.
                    out = rest ? fo::conj(g, rest) : g;
                } else if (qx && qy) {
                    Formula body = rest ? fo::conj(fo::eq(x, x), substitute(rest, y, x)) : fo::eq(x, x);
                    out = fo::exists(x, body);
                } else {
                    const Var q = qx ? x : y;
                    const Var r = qx ? y : x;
                    out = rest ? substitute(rest, q, r) : fo::eq(r, r);
                }
                return eliminate_equality_guards(out);
            }
            std::vector<Formula> parts;
            for (const auto& p : b.parts) parts.push_back(eliminate_equality_guards(p));
            Formula out = fo::conj_all(parts);
            for (auto it = b.vars.rbegin(); it != b.vars.rend(); ++it) out = fo::exists(*it, out);
            return out;
        }
        default: throw Error(ErrorKind::not_in_fragment, "formula must be normalized first");
    }
}

namespace {

class GfTranslator {
public:
    explicit GfTranslator(Trace* trace) : trace_(trace) {}

    // Term whose columns are the free variables of f in increasing order.
    Term unit(const Formula& f) {
        Term out;
        if (is_atomic(f)) {
            out = eliminate_I(fo_to_gra(f));
        } else if (f->kind == FKind::Exists) {
            out = block(f);
        } else {
            throw Error(ErrorKind::not_in_fragment, "expected an atom or a guarded quantifier");
        }
        if (trace_) trace_->step("unit " + print_formula(f) + "  =>  " + print_term(out));
        return out;
    }

    Term sentence(const Formula& f) {
        switch (f->kind) {
            case FKind::And: return term::sint(sentence(f->a), sentence(f->b));
            case FKind::Not: return term::minus(term::top0(), sentence(f->a));
            default: return unit(f);
        }
    }

private:
    Term block(const Formula& f) {
        Block b = open_block(f);
        const Formula& g = b.parts[b.guard];
        const std::vector<Var> ys = g->free;
        const Term guard = unit(g);
        Term body = guard;
        bool first = true;
        for (std::size_t i = 0; i < b.parts.size(); ++i) {
            if (i == b.guard) continue;
            Term piece = guarded(b.parts[i], guard, ys);
            body = first ? piece : term::sint(body, piece);
            first = false;
        }
        // Move the quantified columns to the end, keeping the others in order.
        std::vector<std::size_t> target;
        std::size_t projected = 0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (!contains(b.vars, ys[i])) target.push_back(i);
        }
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (contains(b.vars, ys[i])) {
                target.push_back(i);
                ++projected;
            }
        }
        body = term::apply_word(arrange(target).word, body);
        for (std::size_t i = 0; i < projected; ++i) body = term::ex(body);
        return body;
    }

    // Term equivalent to α ∧ f with columns ys, where `guard` is the term for α.
    Term guarded(const Formula& f, const Term& guard, const std::vector<Var>& ys) {
        switch (f->kind) {
            case FKind::And: return term::sint(guarded(f->a, guard, ys), guarded(f->b, guard, ys));
            case FKind::Not: return term::minus(guard, guarded(f->a, guard, ys));
            default: break;
        }
        const Term inner = unit(f);
        const std::vector<Var>& zs = f->free;
        std::vector<std::size_t> target;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (!contains(zs, ys[i])) target.push_back(i);
        }
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (contains(zs, ys[i])) target.push_back(i);
        }
        const std::string there = arrange(target).word;
        std::vector<Var> labels = permute_labels(there, ys);
        Term out = term::sint(term::apply_word(there, guard), inner);
        return sort_columns(out, labels);
    }

    Trace* trace_;
};

}  // namespace

Term gf_to_algebra(const Formula& f, Trace* trace) {
    if (!is_sentence(f)) throw Error(ErrorKind::not_in_fragment, "only GF sentences are translated");
    const Formula n = normalize(f);
    if (!is_guarded_normalized(n)) throw Error(ErrorKind::not_in_fragment, "not a guarded-fragment sentence");
    const Formula plain = eliminate_equality_guards(n);
    if (trace) trace->step("without equality guards: " + print_formula(plain));
    Term out = GfTranslator(trace).sentence(plain);
    if (trace) trace->step("result: " + print_term(out));
    return out;
}

namespace {

Var fresh_outside(const std::vector<Var>& xs) {
    std::vector<Var> used = xs;
    std::sort(used.begin(), used.end());
    return fresh_variable(used);
}

Formula to_gf(const Term& t, const std::vector<Var>& xs, Trace* trace) {
    const std::size_t k = xs.size();
    Formula out;
    switch (t->op) {
        case Op::Eq: out = fo::eq(xs[0], xs[1]); break;
        case Op::Rel: out = fo::atom(t->name, xs); break;
        case Op::P: {
            std::vector<Var> ys = xs;
            if (k >= 2) std::rotate(ys.begin(), ys.begin() + 1, ys.end());
            out = to_gf(t->kids[0], ys, trace);
            break;
        }
        case Op::S: {
            std::vector<Var> ys = xs;
            if (k >= 2) std::swap(ys[k - 1], ys[k - 2]);
            out = to_gf(t->kids[0], ys, trace);
            break;
        }
        case Op::Minus:
            if (t->kids[0]->arity != t->kids[1]->arity) {
                out = to_gf(t->kids[0], xs, trace);
            } else {
                out = fo::conj(to_gf(t->kids[0], xs, trace), fo::neg(to_gf(t->kids[1], xs, trace)));
            }
            break;
        case Op::Sint: {
            const std::size_t a = t->kids[0]->arity;
            const std::size_t b = t->kids[1]->arity;
            std::vector<Var> l(xs.end() - static_cast<std::ptrdiff_t>(a), xs.end());
            std::vector<Var> r(xs.end() - static_cast<std::ptrdiff_t>(b), xs.end());
            out = fo::conj(to_gf(t->kids[0], l, trace), to_gf(t->kids[1], r, trace));
            break;
        }
        case Op::Ex: {
            const Term& s = t->kids[0];
            if (s->arity == 0) {
                out = to_gf(s, xs, trace);
                break;
            }
            std::vector<Var> ys = xs;
            const Var y = fresh_outside(ys);
            ys.push_back(y);
            const TermGuard g = compute_term_guard(s);
            const std::size_t m = g.guard->arity;
            std::vector<Var> ws(m, 0);
            for (std::size_t j = 0; j < g.positions.size(); ++j) ws[g.positions[j] - 1] = ys[j];
            std::vector<Var> used = ys;
            std::vector<Var> extra;
            for (auto& w : ws) {
                if (w == 0) {
                    w = fresh_outside(used);
                    used.push_back(w);
                    extra.push_back(w);
                }
            }
            Formula alpha = g.guard->op == Op::Eq ? fo::eq(ws[0], ws[1]) : fo::atom(g.guard->name, ws);
            out = fo::conj(alpha, to_gf(s, ys, trace));
            for (auto it = extra.rbegin(); it != extra.rend(); ++it) out = fo::exists(*it, out);
            out = fo::exists(y, out);
            break;
        }
        default:
            throw Error(ErrorKind::not_in_fragment,
                        std::string("operator '") + (t->op == Op::Custom ? t->name : op_name(t->op)) +
                            "' is outside {e, p, s, minus, sint, ex}");
    }
    if (trace) trace->step(print_term(t) + "  =>  " + print_formula(out));
    return out;
}

}  // namespace

Formula algebra_to_gf(const Term& t, Trace* trace) {
    if (t->arity != 0) throw Error(ErrorKind::arity, "only arity-0 terms translate to GF sentences");
    term_vocabulary(t);
    return to_gf(t, {}, trace);
}

}  // namespace gra::translate
