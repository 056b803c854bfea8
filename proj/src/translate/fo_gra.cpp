#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"
#include "gra/translate/translate.hpp"

namespace gra::translate {

namespace {

std::string labels_text(const std::vector<Var>& labels) {
    std::string s = "(";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) s += ",";
        s += var_name(labels[i]);
    }
    return s + ")";
}

Term rotate(Term t, std::size_t r, std::vector<Var>& labels) {
    const std::string word(r, 'p');
    labels = permute_labels(word, labels);
    return term::apply_word(word, std::move(t));
}

}  // namespace

Term sort_columns(Term t, std::vector<Var>& labels) {
    std::vector<std::size_t> target(labels.size());
    std::iota(target.begin(), target.end(), 0);
    std::stable_sort(target.begin(), target.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
    // Rotations are restored with p alone, so two columns are swapped by p.
    const std::size_t k = target.size();
    const std::size_t r = k == 0 ? 0 : (k - target[0]) % k;
    bool rotation = true;
    for (std::size_t j = 0; j < k; ++j) rotation = rotation && target[j] == (j + k - r) % k;
    const std::string word = rotation ? std::string(r, 'p') : arrange(target).word;
    labels = permute_labels(word, labels);
    return term::apply_word(word, std::move(t));
}

Term identify_and_sort(Term t, std::vector<Var>& labels, Trace* trace) {
    for (;;) {
        const std::size_t k = labels.size();
        Var best = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (labels[j] > best && std::count(labels.begin(), labels.end(), labels[j]) >= 2) best = labels[j];
        }
        if (best == 0) break;
        // Last two occurrences of the largest repeated label.
        std::size_t i = k, j = k;
        for (std::size_t x = k; x-- > 0;) {
            if (labels[x] != best) continue;
            if (j == k) {
                j = x;
            } else {
                i = x;
                break;
            }
        }
        const std::vector<Var> before = labels;
        if (j == i + 1) {
            t = rotate(std::move(t), (k - 2 - i) % k, labels);
        } else if (i == 0 && j == k - 1) {
            t = rotate(std::move(t), k - 1, labels);
        } else {
            std::vector<std::size_t> target;
            for (std::size_t x = 0; x < k; ++x) {
                if (x != i && x != j) target.push_back(x);
            }
            target.push_back(i);
            target.push_back(j);
            const PermWord w = arrange(target);
            labels = permute_labels(w.word, labels);
            t = term::apply_word(w.word, std::move(t));
        }
        t = term::I(std::move(t));
        labels.pop_back();
        t = sort_columns(std::move(t), labels);
        if (trace) {
            trace->step("identify " + var_name(best) + ": columns " + labels_text(before) + " -> " +
                        labels_text(labels));
        }
    }
    return sort_columns(std::move(t), labels);
}

namespace {

struct Translated {
    Term term;
    std::vector<Var> labels;
};

Translated fo_to_gra_rec(const Formula& f, Trace* trace) {
    Translated out;
    switch (f->kind) {
        case FKind::Equal:
            if (f->args[0] == f->args[1]) {
                out = {term::I(term::e()), {f->args[0]}};
            } else {
                out = {term::e(), f->free};
            }
            break;
        case FKind::Atom: {
            out.labels = f->args;
            out.term = identify_and_sort(term::rel(f->name, f->args.size()), out.labels, trace);
            break;
        }
        case FKind::Not: {
            auto inner = fo_to_gra_rec(f->a, trace);
            out = {term::neg(inner.term), inner.labels};
            break;
        }
        case FKind::And: {
            auto l = fo_to_gra_rec(f->a, trace);
            auto r = fo_to_gra_rec(f->b, trace);
            out.labels = l.labels;
            out.labels.insert(out.labels.end(), r.labels.begin(), r.labels.end());
            out.term = identify_and_sort(term::J(l.term, r.term), out.labels, trace);
            break;
        }
        case FKind::Exists: {
            auto inner = fo_to_gra_rec(f->a, trace);
            auto at = std::find(inner.labels.begin(), inner.labels.end(), f->var);
            if (at == inner.labels.end()) {
                out = inner;
                break;
            }
            const std::size_t k = inner.labels.size();
            const std::size_t i = static_cast<std::size_t>(at - inner.labels.begin());
            out.labels = inner.labels;
            Term t = rotate(inner.term, k - 1 - i, out.labels);
            t = term::ex(std::move(t));
            out.labels.pop_back();
            out.term = sort_columns(std::move(t), out.labels);
            break;
        }
        default:
            throw Error(ErrorKind::not_in_fragment,
                        "formula must be built from atoms, ~, & and exists; normalize it first");
    }
    if (trace) trace->step(print_formula(f) + "  =>  " + print_term(out.term));
    return out;
}

}  // namespace

Term fo_to_gra(const Formula& f, Trace* trace) {
    formula_vocabulary(f);
    return fo_to_gra_rec(f, trace).term;
}

Term fo_to_gra_equality_free(const Formula& f, Trace* trace) {
    if (!classify_formula(f).equality_free) {
        throw Error(ErrorKind::not_in_fragment, "equality atoms are not allowed in equality-free mode");
    }
    return fo_to_gra(f, trace);
}

namespace {

Var fresh_outside(const std::vector<Var>& xs) {
    std::vector<Var> used = xs;
    std::sort(used.begin(), used.end());
    return fresh_variable(used);
}

Formula falsum(const std::vector<Var>& xs) {
    const Var v = fresh_outside(xs);
    return fo::exists(v, fo::neq(v, v));
}

Formula gra_to_fo_rec(const Term& t, const std::vector<Var>& xs, Trace* trace) {
    const std::size_t k = xs.size();
    Formula out;
    switch (t->op) {
        case Op::Eq: out = fo::eq(xs[0], xs[1]); break;
        case Op::Rel: out = fo::atom(t->name, xs); break;
        case Op::P: {
            // xs ∈ pS iff (x2, ..., xk, x1) ∈ S.
            std::vector<Var> ys = xs;
            if (k >= 2) std::rotate(ys.begin(), ys.begin() + 1, ys.end());
            out = gra_to_fo_rec(t->kids[0], ys, trace);
            break;
        }
        case Op::S: {
            std::vector<Var> ys = xs;
            if (k >= 2) std::swap(ys[k - 1], ys[k - 2]);
            out = gra_to_fo_rec(t->kids[0], ys, trace);
            break;
        }
        case Op::I: {
            std::vector<Var> ys = xs;
            if (t->kids[0]->arity >= 2) ys.push_back(xs.back());
            out = gra_to_fo_rec(t->kids[0], ys, trace);
            break;
        }
        case Op::Not: out = fo::neg(gra_to_fo_rec(t->kids[0], xs, trace)); break;
        case Op::Ex: {
            if (t->kids[0]->arity == 0) {
                out = gra_to_fo_rec(t->kids[0], xs, trace);
                break;
            }
            std::vector<Var> ys = xs;
            const Var y = fresh_outside(xs);
            ys.push_back(y);
            out = fo::exists(y, gra_to_fo_rec(t->kids[0], ys, trace));
            break;
        }
        case Op::J: {
            const std::size_t a = t->kids[0]->arity;
            std::vector<Var> l(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(a));
            std::vector<Var> r(xs.begin() + static_cast<std::ptrdiff_t>(a), xs.end());
            out = fo::conj(gra_to_fo_rec(t->kids[0], l, trace), gra_to_fo_rec(t->kids[1], r, trace));
            break;
        }
        case Op::Cup:
        case Op::Cap: {
            if (t->kids[0]->arity != t->kids[1]->arity) {
                out = falsum(xs);
                break;
            }
            auto l = gra_to_fo_rec(t->kids[0], xs, trace);
            auto r = gra_to_fo_rec(t->kids[1], xs, trace);
            out = t->op == Op::Cup ? fo::disj(l, r) : fo::conj(l, r);
            break;
        }
        case Op::Minus: {
            if (t->kids[0]->arity != t->kids[1]->arity) {
                out = gra_to_fo_rec(t->kids[0], xs, trace);
                break;
            }
            out = fo::conj(gra_to_fo_rec(t->kids[0], xs, trace), fo::neg(gra_to_fo_rec(t->kids[1], xs, trace)));
            break;
        }
        case Op::Sint: {
            const std::size_t a = t->kids[0]->arity;
            const std::size_t b = t->kids[1]->arity;
            std::vector<Var> l(xs.end() - static_cast<std::ptrdiff_t>(a), xs.end());
            std::vector<Var> r(xs.end() - static_cast<std::ptrdiff_t>(b), xs.end());
            out = fo::conj(gra_to_fo_rec(t->kids[0], l, trace), gra_to_fo_rec(t->kids[1], r, trace));
            break;
        }
        case Op::H:
        case Op::Custom:
            throw Error(ErrorKind::unsupported_operator,
                        std::string("operator '") + (t->op == Op::H ? "H" : t->name) + "' has no first-order image");
    }
    if (trace) trace->step(print_term(t) + " @ " + labels_text(xs) + "  =>  " + print_formula(out));
    return out;
}

}  // namespace

Formula gra_to_fo(const Term& t, const std::vector<Var>& vars, Trace* trace) {
    if (vars.size() != t->arity) throw Error(ErrorKind::arity, "one variable per column is required");
    term_vocabulary(t);
    return gra_to_fo_rec(t, vars, trace);
}

Formula gra_to_fo(const Term& t, Trace* trace) {
    std::vector<Var> xs(t->arity);
    std::iota(xs.begin(), xs.end(), Var{1});
    return gra_to_fo(t, xs, trace);
}

Term eliminate_I(const Term& t) {
    if (t->kids.empty()) return t;
    std::vector<Term> kids;
    bool changed = false;
    for (const auto& k : t->kids) {
        kids.push_back(eliminate_I(k));
        changed = changed || kids.back() != k;
    }
    if (t->op == Op::I) {
        const Term& inner = kids[0];
        return inner->arity >= 2 ? term::ex(term::sint(inner, term::e())) : inner;
    }
    if (!changed) return t;
    if (t->op == Op::Custom) return term::custom(t->custom, std::move(kids));
    if (is_unary(t->op)) return term::unary(t->op, kids[0]);
    return term::binary(t->op, kids[0], kids[1]);
}

Formula prenex_existential(const Formula& f) {
    std::set<Var> taken(f->free.begin(), f->free.end());
    std::vector<Var> prefix;
    std::vector<Formula> atoms;
    std::function<void(Formula)> walk = [&](Formula x) {
        switch (x->kind) {
            case FKind::Atom:
            case FKind::Equal: atoms.push_back(x); return;
            case FKind::And:
                walk(x->a);
                walk(x->b);
                return;
            case FKind::Exists: {
                Var v = x->var;
                Formula body = x->a;
                if (taken.contains(v)) {
                    std::vector<Var> used(taken.begin(), taken.end());
                    auto more = all_variables(body);
                    used.insert(used.end(), more.begin(), more.end());
                    std::sort(used.begin(), used.end());
                    used.erase(std::unique(used.begin(), used.end()), used.end());
                    const Var w = fresh_variable(used);
                    body = substitute(body, v, w);
                    v = w;
                }
                taken.insert(v);
                prefix.push_back(v);
                walk(body);
                return;
            }
            default: throw Error(ErrorKind::not_in_fragment, "only atoms, & and exists can be put in prenex form here");
        }
    };
    walk(f);
    Formula out = fo::conj_all(atoms);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) out = fo::exists(*it, out);
    return out;
}

Term cqe_to_algebra(const Formula& f, bool cq_only, Trace* trace) {
    const auto report = classify_formula(f);
    if (cq_only ? !report.cq : !report.cqe) {
        throw Error(ErrorKind::not_in_fragment,
                    cq_only ? "not a conjunctive query" : "not a conjunctive query with equality");
    }
    return fo_to_gra(f, trace);
}

Formula algebra_to_cqe(const Term& t, bool cq_only, Trace* trace) {
    const auto report = classify_term(t);
    if (cq_only ? !report.cq : !report.cqe) {
        throw Error(ErrorKind::not_in_fragment, cq_only ? "term uses operators outside {p,s,I,J,ex}"
                                                        : "term uses operators outside {e,p,s,I,J,ex}");
    }
    return prenex_existential(gra_to_fo(t, trace));
}

}  // namespace gra::translate
