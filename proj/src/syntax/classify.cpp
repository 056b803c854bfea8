#include "gra/syntax/classify.hpp"

#include <algorithm>
#include <functional>

namespace gra {

void flatten_conjunction(const Formula& f, std::vector<Formula>& out) {
    if (f->kind == FKind::And) {
        flatten_conjunction(f->a, out);
        flatten_conjunction(f->b, out);
    } else {
        out.push_back(f);
    }
}

namespace {

bool is_atomic(const Formula& f) { return f->kind == FKind::Atom || f->kind == FKind::Equal; }

bool is_literal(const Formula& f) { return is_atomic(f) || (f->kind == FKind::Not && is_atomic(f->a)); }

bool has_quantifier(const Formula& f) {
    if (f->kind == FKind::Exists || f->kind == FKind::Forall) return true;
    return (f->a && has_quantifier(f->a)) || (f->b && has_quantifier(f->b));
}

bool has_equality(const Formula& f) {
    if (f->kind == FKind::Equal) return true;
    return (f->a && has_equality(f->a)) || (f->b && has_equality(f->b));
}

bool conjunction_of(const Formula& f, bool allow_equality) {
    if (f->kind == FKind::And) return conjunction_of(f->a, allow_equality) && conjunction_of(f->b, allow_equality);
    return f->kind == FKind::Atom || (allow_equality && f->kind == FKind::Equal);
}

bool conjunctive_query(const Formula& f, bool allow_equality) {
    Formula body = f;
    while (body->kind == FKind::Exists) body = body->a;
    return conjunction_of(body, allow_equality);
}

bool disjoint(const std::vector<Var>& a, const std::vector<Var>& b) {
    std::vector<Var> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    return both.empty();
}

bool in_fragment_f(const Formula& f) {
    switch (f->kind) {
        case FKind::Atom:
        case FKind::Equal: return true;
        case FKind::Not:
        case FKind::Exists:
        case FKind::Forall: return in_fragment_f(f->a);
        case FKind::And:
        case FKind::Or:
        case FKind::Implies: return disjoint(f->a->free, f->b->free) && in_fragment_f(f->a) && in_fragment_f(f->b);
    }
    return false;
}

bool in_fl(const Formula& f, std::size_t k) {
    switch (f->kind) {
        case FKind::Atom: {
            const std::size_t n = f->args.size();
            if (n > k) return false;
            for (std::size_t i = 0; i < n; ++i) {
                if (f->args[i] != k - n + 1 + i) return false;
            }
            return true;
        }
        case FKind::Equal: return false;
        case FKind::Not: return in_fl(f->a, k);
        case FKind::And:
        case FKind::Or:
        case FKind::Implies: return in_fl(f->a, k) && in_fl(f->b, k);
        case FKind::Exists:
        case FKind::Forall: return f->var == k + 1 && in_fl(f->a, k + 1);
    }
    return false;
}

bool herbrand(const Formula& f) {
    if (!f->free.empty()) return false;
    std::vector<Var> bound;
    Formula body = f;
    while (body->kind == FKind::Exists || body->kind == FKind::Forall) {
        bound.push_back(body->var);
        body = body->a;
    }
    std::sort(bound.begin(), bound.end());
    if (std::adjacent_find(bound.begin(), bound.end()) != bound.end()) return false;
    std::vector<Formula> lits;
    flatten_conjunction(body, lits);
    return std::all_of(lits.begin(), lits.end(), is_literal);
}

}  // namespace

std::optional<std::size_t> find_guard(const std::vector<Formula>& conjuncts) {
    std::vector<Var> free;
    for (const auto& c : conjuncts) {
        std::vector<Var> merged;
        std::set_union(free.begin(), free.end(), c->free.begin(), c->free.end(), std::back_inserter(merged));
        free = std::move(merged);
    }
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
        if (!is_atomic(conjuncts[i])) continue;
        if (conjuncts[i]->free == free) return i;
    }
    return std::nullopt;
}

bool is_guarded_normalized(const Formula& f) {
    switch (f->kind) {
        case FKind::Atom:
        case FKind::Equal: return true;
        case FKind::Not: return is_guarded_normalized(f->a);
        case FKind::And: return is_guarded_normalized(f->a) && is_guarded_normalized(f->b);
        case FKind::Exists: {
            Formula body = f->a;
            while (body->kind == FKind::Exists) body = body->a;
            std::vector<Formula> parts;
            flatten_conjunction(body, parts);
            if (!find_guard(parts)) return false;
            return std::all_of(parts.begin(), parts.end(), is_guarded_normalized);
        }
        default: return false;
    }
}

std::optional<std::size_t> fluted_level(const Formula& f) {
    const auto vars = all_variables(f);
    const std::size_t top = vars.empty() ? 0 : vars.back();
    for (std::size_t k = 0; k <= top; ++k) {
        if (in_fl(f, k)) return k;
    }
    return std::nullopt;
}

FragmentReport classify_formula(const Formula& f) {
    FragmentReport r;
    r.relational_atom = f->kind == FKind::Atom;
    r.atom = is_atomic(f);
    r.quantifier_free = !has_quantifier(f);
    r.cq = conjunctive_query(f, false);
    r.cqe = conjunctive_query(f, true);
    r.fluted_level = fluted_level(f);
    r.fluted = r.fluted_level.has_value();
    r.guarded = is_sentence(f) && is_guarded_normalized(normalize(f));
    const auto vocab = formula_vocabulary(f);
    r.fo2 = is_sentence(f) && all_variables(f).size() <= 2 &&
            std::all_of(vocab.begin(), vocab.end(), [](const auto& kv) { return kv.second <= 2; });
    r.fragment_f = in_fragment_f(f);
    r.herbrand = herbrand(f);
    r.equality_free = !has_equality(f);
    return r;
}

TermReport classify_term(const Term& t) {
    TermReport r;
    r.signature = term_signature(t);
    r.core = within_signature(t, {"e", "p", "s", "I", "not", "J", "ex"});
    r.cq = within_signature(t, {"p", "s", "I", "J", "ex"});
    r.cqe = within_signature(t, {"e", "p", "s", "I", "J", "ex"});
    r.guarded = within_signature(t, {"e", "p", "s", "minus", "sint", "ex"});
    r.fluted = within_signature(t, {"not", "sint", "ex"});
    r.fo2 = within_signature(t, {"e", "s", "not", "sint", "ex"});
    r.quantifier_free = within_signature(t, {"e", "p", "s", "I", "not", "J"});
    r.join_free = within_signature(t, {"e", "p", "s", "I", "not", "ex"});
    r.fragment_f = within_signature(t, {"e", "p", "s", "not", "J", "ex"});
    r.inj = within_signature(t, {"I", "not", "J"});
    r.njex = within_signature(t, {"not", "J", "ex"});
    r.equality_free = within_signature(t, {"p", "s", "I", "not", "J", "ex"});
    if (r.fo2) {
        const auto vocab = term_vocabulary(t);
        r.fo2 = std::all_of(vocab.begin(), vocab.end(), [](const auto& kv) { return kv.second <= 2; });
    }
    return r;
}

std::vector<std::pair<std::string, bool>> report_flags(const FragmentReport& r) {
    return {{"relational-atom", r.relational_atom},
            {"atom", r.atom},
            {"quantifier-free", r.quantifier_free},
            {"cq", r.cq},
            {"cqe", r.cqe},
            {"fluted", r.fluted},
            {"guarded", r.guarded},
            {"fo2", r.fo2},
            {"fragment-f", r.fragment_f},
            {"herbrand", r.herbrand},
            {"equality-free", r.equality_free}};
}

std::vector<std::pair<std::string, bool>> report_flags(const TermReport& r) {
    return {{"core", r.core},
            {"cq-algebra", r.cq},
            {"cqe-algebra", r.cqe},
            {"guarded-algebra", r.guarded},
            {"fluted-algebra", r.fluted},
            {"fo2-algebra", r.fo2},
            {"quantifier-free-algebra", r.quantifier_free},
            {"join-free", r.join_free},
            {"fragment-f-algebra", r.fragment_f},
            {"inj-algebra", r.inj},
            {"njex-algebra", r.njex},
            {"equality-free-algebra", r.equality_free}};
}

}  // namespace gra
