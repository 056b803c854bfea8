#include "gra/check/selftest.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gra/check/generate.hpp"
#include "gra/decide/router.hpp"
#include "gra/error.hpp"
#include "gra/relalg/operators.hpp"
#include "gra/translate/fluted.hpp"
#include "gra/translate/fo2.hpp"
#include "gra/translate/guarded.hpp"
#include "gra/translate/translate.hpp"

namespace gra::check {

namespace {

using gen::Rng;

// Runs `one` count times; a false result or an exception counts as a failure
// described by the returned text.
SuiteResult suite(const std::string& name, std::size_t count, const std::function<std::string(std::size_t)>& one) {
    SuiteResult r{name};
    for (std::size_t i = 0; i < count; ++i) {
        std::string failure;
        try {
            failure = one(i);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        ++r.total;
        if (failure.empty()) {
            ++r.passed;
        } else if (r.first_failure.empty()) {
            r.first_failure = failure;
        }
    }
    return r;
}

bool same_on_random_structures(Rng& rng, const Vocabulary& vocab, const std::function<bool(const Structure&)>& agree) {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int i = 0; i < 3; ++i) {
            if (!agree(gen::random_structure(rng, vocab, n))) return false;
        }
    }
    return true;
}

// Relation of f with its columns read as the variables in cols.
ADRelation on_columns(const Formula& f, const Structure& m, const std::vector<Var>& cols) {
    const std::size_t n = m.domain().size();
    ADRelation out(n, cols.size());
    Var top = 0;
    for (Var v : all_variables(f)) top = std::max(top, v);
    for (Var v : cols) top = std::max(top, v);
    std::vector<Element> a(top + 1, 0);
    Tuple t(cols.size());
    for (std::size_t c = 0; c < out.cell_count(); ++c) {
        out.decode(c, t);
        for (std::size_t i = 0; i < cols.size(); ++i) a[cols[i]] = t[i];
        if (fo_holds(f, m, a)) out.set_cell(c);
    }
    return out;
}

Term unary_string(Rng& rng, std::size_t length, Term leaf) {
    static const Op ops[] = {Op::P, Op::S, Op::I, Op::Not, Op::Ex};
    for (std::size_t i = 0; i < length; ++i) leaf = term::unary(ops[gen::pick(rng, 5)], leaf);
    return leaf;
}

}  // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    std::vector<SuiteResult> out;
    const Vocabulary small = {{"P", 1}, {"R", 2}, {"T", 3}};

    out.push_back(suite("parse-print", count, [&](std::size_t) -> std::string {
        gen::TermShape ts{4, {Op::P, Op::S, Op::I, Op::Not, Op::Ex, Op::J, Op::Cup, Op::Cap, Op::Minus, Op::Sint, Op::H},
                          small};
        const Term t = gen::random_term(rng, ts);
        if (!equal(parse_term(print_term(t)), t)) return "term " + print_term(t);
        const Formula f = gen::random_formula(rng, {4, 4, small});
        if (!equal(parse_formula(print_formula(f)), f)) return "formula " + print_formula(f);
        return "";
    }));

    out.push_back(suite("fo-to-gra", count, [&](std::size_t) -> std::string {
        const Formula f = gen::random_formula(rng, {4, 4, small});
        const Term t = translate::fo_to_gra(normalize(f));
        const bool ok = same_on_random_structures(rng, small, [&](const Structure& m) {
            return fo_evaluate(f, m) == evaluate(t, m);
        });
        return ok ? "" : print_formula(f);
    }));

    out.push_back(suite("gra-to-fo", count, [&](std::size_t) -> std::string {
        gen::TermShape ts{4, {Op::P, Op::S, Op::I, Op::Not, Op::Ex, Op::J, Op::Cup, Op::Cap, Op::Minus, Op::Sint}, small};
        const Term t = gen::random_term(rng, ts);
        const Formula f = translate::gra_to_fo(t);
        const bool ok = same_on_random_structures(rng, small, [&](const Structure& m) {
            return fo_evaluate(f, m) == evaluate(t, m);
        });
        return ok ? "" : print_term(t);
    }));

    out.push_back(suite("eliminate-I", count, [&](std::size_t) -> std::string {
        gen::TermShape ts{4, {Op::P, Op::S, Op::I, Op::Not, Op::Ex, Op::J, Op::Sint}, small};
        const Term t = gen::random_term(rng, ts);
        const Term u = translate::eliminate_I(t);
        if (term_signature(u).ops.count("I")) return "I left in " + print_term(u);
        const bool ok = same_on_random_structures(rng, small, [&](const Structure& m) {
            return evaluate(t, m) == evaluate(u, m);
        });
        return ok ? "" : print_term(t);
    }));

    out.push_back(suite("permutations", 1, [&](std::size_t) -> std::string {
        for (std::size_t k = 2; k <= 5; ++k) {
            std::vector<std::size_t> sigma(k);
            std::iota(sigma.begin(), sigma.end(), 0);
            do {
                if (translate::realized_permutation(translate::synthesize_permutation(sigma).word, k) != sigma) {
                    return "k=" + std::to_string(k);
                }
            } while (std::next_permutation(sigma.begin(), sigma.end()));
        }
        return "";
    }));

    out.push_back(suite("term-guards", count, [&](std::size_t) -> std::string {
        const Term t = gen::random_guarded_term(rng, small, 4);
        const auto g = translate::compute_term_guard(t);
        const bool ok = same_on_random_structures(rng, small, [&](const Structure& m) {
            const ADRelation guard = evaluate(g.guard, m);
            bool covered = true;
            evaluate(t, m).for_each([&](std::span<const Element> tup) {
                bool found = false;
                guard.for_each([&](std::span<const Element> a) {
                    bool match = true;
                    for (std::size_t i = 0; i < tup.size(); ++i) match = match && a[g.positions[i] - 1] == tup[i];
                    found = found || match;
                });
                covered = covered && found;
            });
            return covered;
        });
        return ok ? "" : print_term(t);
    }));

    out.push_back(suite("gf", count, [&](std::size_t) -> std::string {
        const Formula f = gen::random_gf_sentence(rng, small, 2);
        Term t;
        Formula back;
        try {
            t = translate::gf_to_algebra(f);
            back = translate::algebra_to_gf(t);
        } catch (const Error& e) {
            return print_formula(f) + ": " + e.what();
        }
        const bool ok = same_on_random_structures(rng, small, [&](const Structure& m) {
            const bool v = !fo_evaluate(f, m).empty();
            return v == !evaluate(t, m).empty() && v == !fo_evaluate(back, m).empty();
        });
        return ok ? "" : print_formula(f);
    }));

    out.push_back(suite("fo2", count, [&](std::size_t) -> std::string {
        const Vocabulary v2 = {{"P", 1}, {"R", 2}};
        const Formula f = gen::random_fo2_sentence(rng, v2, 4);
        const Term t = translate::fo2_to_algebra(f);
        const Formula back = translate::algebra_to_fo2(t);
        const bool ok = same_on_random_structures(rng, v2, [&](const Structure& m) {
            const bool v = !fo_evaluate(f, m).empty();
            return v == !evaluate(t, m).empty() && v == !fo_evaluate(back, m).empty();
        });
        return ok ? "" : print_formula(f);
    }));

    out.push_back(suite("fl", count, [&](std::size_t) -> std::string {
        const std::size_t level = gen::pick(rng, 3);
        const Formula f = gen::random_fl_formula(rng, small, level, 3);
        const Term t = translate::fl_to_algebra(f);
        const Formula back = translate::algebra_to_fl(t);
        std::vector<Var> suffix, prefix;
        for (std::size_t i = 0; i < t->arity; ++i) {
            suffix.push_back(level - t->arity + 1 + i);
            prefix.push_back(1 + i);
        }
        const bool ok = same_on_random_structures(rng, small, [&](const Structure& m) {
            const ADRelation a = evaluate(t, m);
            return on_columns(f, m, suffix) == a && on_columns(back, m, prefix) == a;
        });
        return ok ? "" : print_formula(f);
    }));

    out.push_back(suite("automaton", count, [&](std::size_t) -> std::string {
        const Term t = unary_string(rng, gen::pick(rng, 9), term::e());
        OracleOptions o;
        o.max_domain = 2;
        const bool a = sat_joinfree(t).kind == VerdictKind::sat;
        const bool b = sat_oracle(t, o).kind == VerdictKind::sat;
        return a == b ? "" : print_term(t);
    }));

    out.push_back(suite("reductions", count, [&](std::size_t) -> std::string {
        const Cnf cnf = gen::random_cnf(rng, 1 + gen::pick(rng, 5), 1 + gen::pick(rng, 8));
        const Prop p = cnf_to_prop(cnf);
        bool truth = false;
        for (std::size_t bits = 0; bits < (std::size_t{1} << cnf.variables) && !truth; ++bits) {
            std::vector<bool> a(cnf.variables + 1);
            for (std::size_t v = 1; v <= cnf.variables; ++v) a[v] = (bits >> (v - 1)) & 1u;
            truth = prop_holds(p, a);
        }
        const bool inj = sat_quantifier_free(reduce_sat_to_inj(p)).kind == VerdictKind::sat;
        const bool njex = sat_fragment_f(reduce_sat_to_njex(p)).kind == VerdictKind::sat;
        return inj == truth && njex == truth ? "" : print_dimacs(cnf);
    }));

    out.push_back(suite("herbrand", count, [&](std::size_t) -> std::string {
        HerbrandSentence h;
        const std::size_t vars = 1 + gen::pick(rng, 3);
        for (Var v = 1; v <= vars; ++v) {
            h.prefix.emplace_back(gen::coin(rng, 50) ? Quantifier::exists : Quantifier::forall, v);
        }
        const std::size_t lits = 1 + gen::pick(rng, 4);
        for (std::size_t i = 0; i < lits; ++i) {
            HerbrandLiteral l;
            l.positive = gen::coin(rng, 50);
            l.equality = gen::coin(rng, 25);
            l.name = l.equality ? "" : (gen::coin(rng, 50) ? "P" : "R");
            const std::size_t arity = l.equality || l.name == "R" ? 2 : 1;
            for (std::size_t j = 0; j < arity; ++j) l.args.push_back(1 + gen::pick(rng, vars));
            h.matrix.push_back(l);
        }
        OracleOptions o;
        o.max_domain = std::max<std::size_t>(2, vars);
        const bool a = sat_herbrand(h, o).kind == VerdictKind::sat;
        const bool b = sat_oracle(herbrand_to_formula(h), o).kind == VerdictKind::sat;
        return a == b ? "" : print_herbrand(h);
    }));

    return out;
}

}  // namespace gra::check
