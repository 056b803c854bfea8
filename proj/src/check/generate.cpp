#include "gra/check/generate.hpp"

#include <algorithm>

#include "gra/relalg/operators.hpp"

namespace gra::gen {

std::size_t pick(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

bool coin(Rng& rng, std::size_t percent) { return pick(rng, 100) < percent; }

Structure random_structure(Rng& rng, const Vocabulary& vocab, std::size_t domain_size, std::size_t percent) {
    Structure m(Domain::of_size(domain_size));
    for (const auto& [name, arity] : vocab) {
        ADRelation r(domain_size, arity);
        for (std::size_t c = 0; c < r.cell_count(); ++c) {
            if (coin(rng, percent)) r.set_cell(c);
        }
        m.add_relation(name, std::move(r));
    }
    return m;
}

Vocabulary random_vocabulary(Rng& rng, std::size_t count, std::size_t lo, std::size_t hi) {
    Vocabulary v;
    for (std::size_t i = 0; i < count; ++i) {
        v.emplace(std::string(1, static_cast<char>('A' + i)), lo + pick(rng, hi - lo + 1));
    }
    return v;
}

namespace {

std::pair<std::string, std::size_t> any_symbol(Rng& rng, const Vocabulary& vocab) {
    auto it = vocab.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick(rng, vocab.size())));
    return *it;
}

std::vector<std::pair<std::string, std::size_t>> symbols_upto(const Vocabulary& vocab, std::size_t k) {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& s : vocab) {
        if (s.second <= k) out.push_back(s);
    }
    return out;
}

Formula random_atom(Rng& rng, const FormulaShape& shape) {
    auto var = [&] { return static_cast<Var>(1 + pick(rng, shape.variables)); };
    if (shape.vocab.empty() || (shape.equality && coin(rng, 20))) return fo::eq(var(), var());
    const auto [name, arity] = any_symbol(rng, shape.vocab);
    std::vector<Var> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(var());
    return fo::atom(name, args);
}

Formula formula_rec(Rng& rng, const FormulaShape& shape, std::size_t depth) {
    if (depth == 0 || coin(rng, 25)) return random_atom(rng, shape);
    auto sub = [&] { return formula_rec(rng, shape, depth - 1); };
    auto var = [&] { return static_cast<Var>(1 + pick(rng, shape.variables)); };
    for (;;) {
        switch (pick(rng, 6)) {
            case 0: return fo::neg(sub());
            case 1: return fo::conj(sub(), sub());
            case 2:
                if (!shape.derived) continue;
                return coin(rng, 70) ? fo::disj(sub(), sub()) : fo::implies(sub(), sub());
            case 3:
            case 4: return fo::exists(var(), sub());
            default:
                if (!shape.derived) continue;
                return fo::forall(var(), sub());
        }
    }
}

Term term_leaf(Rng& rng, const TermShape& shape) {
    const auto syms = symbols_upto(shape.vocab, shape.max_arity);
    const bool can_e = shape.equality && shape.max_arity >= 2;
    if (can_e && (syms.empty() || coin(rng, 25))) return term::e();
    if (syms.empty()) return term::top0();
    const auto& [name, arity] = syms[pick(rng, syms.size())];
    return term::rel(name, arity);
}

Term term_rec(Rng& rng, const TermShape& shape, std::size_t depth) {
    if (depth == 0 || shape.ops.empty() || coin(rng, 20)) return term_leaf(rng, shape);
    std::vector<Op> ops(shape.ops.begin(), shape.ops.end());
    const Op op = ops[pick(rng, ops.size())];
    if (is_unary(op)) return term::unary(op, term_rec(rng, shape, depth - 1));
    const Term l = term_rec(rng, shape, depth - 1);
    Term r = term_rec(rng, shape, depth - 1);
    if (op == Op::Cup || op == Op::Cap || op == Op::Minus) {
        // Mismatched arities are legal but degenerate; retry a few times.
        for (int i = 0; i < 3 && r->arity != l->arity; ++i) r = term_rec(rng, shape, depth - 1);
    }
    if (op == Op::J && l->arity + r->arity > shape.max_arity) {
        return shape.ops.count(Op::Sint) ? term::sint(l, r) : l;
    }
    return term::binary(op, l, r);
}

struct GfBuilder {
    Rng& rng;
    const Vocabulary& vocab;

    Formula atom_over(const std::vector<Var>& g) {
        if (g.empty() || coin(rng, 15)) {
            const auto nullary = symbols_upto(vocab, 0);
            if (!nullary.empty()) return fo::atom(nullary[pick(rng, nullary.size())].first, {});
            if (g.empty()) return {};
        }
        if (coin(rng, 20)) return fo::eq(g[pick(rng, g.size())], g[pick(rng, g.size())]);
        const auto [name, arity] = any_symbol(rng, vocab);
        std::vector<Var> args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back(g[pick(rng, g.size())]);
        return fo::atom(name, args);
    }

    Formula block(const std::vector<Var>& g, std::size_t qdepth, std::size_t depth) {
        const Var base = g.empty() ? 1 : *std::max_element(g.begin(), g.end()) + 1;
        std::vector<Var> args;
        std::string name;
        const bool equality = coin(rng, 15);
        std::size_t arity = 2;
        if (!equality) {
            std::tie(name, arity) = any_symbol(rng, vocab);
            if (arity == 0) return {};
        }
        for (std::size_t i = 0; i < arity; ++i) {
            if (!g.empty() && coin(rng, 50)) {
                args.push_back(g[pick(rng, g.size())]);
            } else {
                args.push_back(base + pick(rng, arity));
            }
        }
        if (std::all_of(args.begin(), args.end(), [&](Var v) { return v < base; })) args[0] = base;
        std::vector<Var> bound, scope = args;
        for (Var v : args) {
            if (v >= base) bound.push_back(v);
        }
        std::sort(bound.begin(), bound.end());
        bound.erase(std::unique(bound.begin(), bound.end()), bound.end());
        std::sort(scope.begin(), scope.end());
        scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
        const Formula guard = equality ? fo::eq(args[0], args[1]) : fo::atom(name, args);
        const Formula body = formula(scope, qdepth - 1, depth);
        Formula out;
        if (body && coin(rng, 30)) {
            out = fo::implies(guard, body);
            for (auto it = bound.rbegin(); it != bound.rend(); ++it) out = fo::forall(*it, out);
        } else {
            out = body ? fo::conj(guard, body) : guard;
            for (auto it = bound.rbegin(); it != bound.rend(); ++it) out = fo::exists(*it, out);
        }
        return out;
    }

    Formula formula(const std::vector<Var>& g, std::size_t qdepth, std::size_t depth) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            Formula f;
            const std::size_t choice = depth == 0 ? 0 : pick(rng, 5);
            switch (choice) {
                case 0: f = atom_over(g); break;
                case 1: {
                    const Formula a = formula(g, qdepth, depth - 1);
                    if (a) f = fo::neg(a);
                    break;
                }
                case 2: {
                    const Formula a = formula(g, qdepth, depth - 1);
                    const Formula b = formula(g, qdepth, depth - 1);
                    if (a && b) f = fo::conj(a, b);
                    break;
                }
                default:
                    if (qdepth > 0) f = block(g, qdepth, depth - 1);
                    break;
            }
            if (f) return f;
        }
        return {};
    }
};

Formula fo2_rec(Rng& rng, const Vocabulary& vocab, std::size_t depth) {
    auto var = [&] { return static_cast<Var>(1 + pick(rng, 2)); };
    if (depth == 0 || coin(rng, 20)) {
        if (vocab.empty() || coin(rng, 15)) return fo::eq(var(), var());
        const auto [name, arity] = any_symbol(rng, vocab);
        std::vector<Var> args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back(var());
        return fo::atom(name, args);
    }
    auto sub = [&] { return fo2_rec(rng, vocab, depth - 1); };
    switch (pick(rng, 7)) {
        case 0: return fo::neg(sub());
        case 1: return fo::conj(sub(), sub());
        case 2: return fo::disj(sub(), sub());
        case 3: return fo::forall(var(), sub());
        default: return fo::exists(var(), sub());
    }
}

Formula fl_rec(Rng& rng, const Vocabulary& vocab, std::size_t k, std::size_t depth) {
    const auto syms = symbols_upto(vocab, k);
    if (!syms.empty() && (depth == 0 || coin(rng, 20))) {
        const auto& [name, arity] = syms[pick(rng, syms.size())];
        std::vector<Var> args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back(k - arity + 1 + i);
        return fo::atom(name, args);
    }
    const std::size_t d = depth == 0 ? 0 : depth - 1;
    auto sub = [&] { return fl_rec(rng, vocab, k, d); };
    if (depth == 0) return fo::exists(k + 1, fl_rec(rng, vocab, k + 1, 0));
    switch (pick(rng, 7)) {
        case 0: return fo::neg(sub());
        case 1: return fo::conj(sub(), sub());
        case 2: return fo::disj(sub(), sub());
        case 3: return fo::implies(sub(), sub());
        case 4: return fo::forall(k + 1, fl_rec(rng, vocab, k + 1, d));
        default: return fo::exists(k + 1, fl_rec(rng, vocab, k + 1, d));
    }
}

}  // namespace

Formula random_formula(Rng& rng, const FormulaShape& shape) { return formula_rec(rng, shape, shape.depth); }

Term random_term(Rng& rng, const TermShape& shape) { return term_rec(rng, shape, shape.depth); }

Formula random_gf_sentence(Rng& rng, const Vocabulary& vocab, std::size_t depth) {
    GfBuilder b{rng, vocab};
    for (;;) {
        Formula f = b.formula({}, depth, depth + 2);
        if (f) return f;
    }
}

Formula random_fo2_sentence(Rng& rng, const Vocabulary& vocab, std::size_t depth) {
    Formula f = fo2_rec(rng, vocab, depth);
    const auto free = f->free;
    for (auto it = free.rbegin(); it != free.rend(); ++it) f = coin(rng, 50) ? fo::exists(*it, f) : fo::forall(*it, f);
    return f;
}

Formula random_fl_formula(Rng& rng, const Vocabulary& vocab, std::size_t level, std::size_t depth) {
    return fl_rec(rng, vocab, level, depth);
}

Term random_guarded_term(Rng& rng, const Vocabulary& vocab, std::size_t depth, std::size_t max_arity) {
    TermShape shape;
    shape.depth = depth;
    shape.ops = {Op::P, Op::S, Op::Minus, Op::Sint, Op::Ex};
    shape.vocab = vocab;
    shape.max_arity = max_arity;
    return random_term(rng, shape);
}

Cnf random_cnf(Rng& rng, std::size_t variables, std::size_t clauses, std::size_t width) {
    Cnf cnf;
    cnf.variables = variables;
    for (std::size_t i = 0; i < clauses; ++i) {
        std::vector<int> clause;
        while (clause.size() < std::min(width, variables)) {
            const int v = static_cast<int>(1 + pick(rng, variables));
            if (std::any_of(clause.begin(), clause.end(), [&](int l) { return l == v || l == -v; })) continue;
            clause.push_back(coin(rng, 50) ? v : -v);
        }
        cnf.clauses.push_back(std::move(clause));
    }
    return cnf;
}

}  // namespace gra::gen
