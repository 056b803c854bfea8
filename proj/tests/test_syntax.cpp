#include <doctest.h>

#include "gra/check/generate.hpp"
#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"
#include "gra/syntax/formula.hpp"
#include "gra/syntax/term.hpp"
#include "support/oracles.hpp"

using namespace gra;

namespace {

ErrorKind error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::usage;
}

}  // namespace

TEST_CASE("term parsing and arities") {
    const Term t = parse_term("p(I(p(p(R/3))))");
    CHECK(t->arity == 2);
    CHECK(print_term(t) == "p(I(p(p(R/3))))");
    CHECK(parse_term("e")->arity == 2);
    const Term j = parse_term("J(R/2, not(S/1))");
    CHECK(j->op == Op::J);
    CHECK(j->arity == 3);
    CHECK(parse_term("J(R/2, ex(R))")->arity == 3);
    CHECK(parse_term("ex(ex(ex(e)))")->arity == 0);
    CHECK(parse_term("I(P/1)")->arity == 1);
    CHECK(parse_term("sint(R/3, P/1)")->arity == 3);
    CHECK(parse_term("cup(R/2, P/1)")->arity == 0);
    CHECK(parse_term("minus(R/2, P/1)")->arity == 2);
    CHECK(parse_term("H(R/2, P/1)")->arity == 0);
}

TEST_CASE("term parse errors") {
    CHECK(error_of([] { parse_term("p(R/2"); }) == ErrorKind::syntax);
    CHECK(error_of([] { parse_term("q(R/2)"); }) == ErrorKind::syntax);
    CHECK(error_of([] { parse_term("R"); }) == ErrorKind::syntax);
    CHECK(error_of([] { parse_term("J(R/2, R/3)"); }) == ErrorKind::arity);
    try {
        parse_term("J(R/2,, S/1)");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
}

TEST_CASE("formula parsing") {
    const Formula a = parse_formula("R(v1,v2,v1)");
    CHECK(a->free == std::vector<Var>{1, 2});
    const Formula e = parse_formula("v8 = v8");
    CHECK(e->free == std::vector<Var>{8});
    CHECK(parse_formula("exists v2. R(v1,v2)")->free == std::vector<Var>{1});
    CHECK(print_formula(parse_formula("v1 != v2")) == "v1 != v2");
    CHECK(error_of([] { parse_formula("R(x,y)"); }) == ErrorKind::syntax);
    CHECK(error_of([] { parse_formula("R(v1) & R(v1,v2)"); }) == ErrorKind::arity);
    CHECK(error_of([] { parse_formula("exists v1 R(v1)"); }) == ErrorKind::syntax);
}

TEST_CASE("formula semantics orders columns by variable index") {
    Structure m(Domain({"a", "b"}));
    m.add_relation("R", 2, {{"a", "b"}});
    CHECK(fo_evaluate(parse_formula("R(v1,v1)"), m).arity() == 1);
    CHECK(fo_evaluate(parse_formula("v8 = v8"), m) == ADRelation::full(2, 1));
    CHECK(fo_evaluate(parse_formula("v1 != v1"), m) == ADRelation(2, 1));
    CHECK(fo_evaluate(parse_formula("~(v1 != v1 & v2 != v2)"), m) == ADRelation::full(2, 2));
    ADRelation swapped(2, 2);
    swapped.insert(Tuple{1, 0});
    CHECK(fo_evaluate(parse_formula("R(v2,v1)"), m) == swapped);
    CHECK(fo_evaluate(parse_formula("R(v6,v9)"), m) == fo_evaluate(parse_formula("R(v1,v2)"), m));
}

TEST_CASE("fo_evaluate matches the reference semantics") {
    gen::Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        gen::FormulaShape shape;
        shape.depth = 4;
        shape.vocab = gen::random_vocabulary(rng, 2, 0, 3);
        const Formula f = gen::random_formula(rng, shape);
        const Structure m = gen::random_structure(rng, shape.vocab, 1 + gen::pick(rng, 3));
        CHECK_MESSAGE(testing::matches_reference(testing::Expr(f), m), print_formula(f));
    }
}

TEST_CASE("evaluate matches the reference semantics") {
    gen::Rng rng(12);
    for (int i = 0; i < 300; ++i) {
        gen::TermShape shape;
        shape.depth = 4;
        shape.ops = {Op::P, Op::S, Op::I, Op::Not, Op::J, Op::Ex, Op::Cup, Op::Cap, Op::Minus, Op::Sint};
        shape.vocab = gen::random_vocabulary(rng, 2, 0, 3);
        const Term t = gen::random_term(rng, shape);
        const Structure m = gen::random_structure(rng, shape.vocab, 1 + gen::pick(rng, 3));
        CHECK_MESSAGE(testing::matches_reference(testing::Expr(t), m), print_term(t));
    }
}

TEST_CASE("column order is invariant under order-preserving renaming") {
    gen::Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        gen::FormulaShape shape;
        shape.variables = 3;
        shape.vocab = gen::random_vocabulary(rng, 2, 1, 3);
        const Formula f = gen::random_formula(rng, shape);
        // v1, v2, v3 -> v4, v7, v9 on every occurrence, bound or free.
        std::string text = print_formula(f);
        for (auto [from, to] : {std::pair{"v3", "v9"}, {"v2", "v7"}, {"v1", "v4"}}) {
            for (std::size_t at = text.find(from); at != std::string::npos; at = text.find(from, at + 1)) {
                text.replace(at, 2, to);
            }
        }
        const Formula g = parse_formula(text);
        const Structure m = gen::random_structure(rng, shape.vocab, 1 + gen::pick(rng, 3));
        CHECK(fo_evaluate(f, m) == fo_evaluate(g, m));
    }
}

TEST_CASE("print and parse round-trip") {
    gen::Rng rng(14);
    for (int i = 0; i < 10000; ++i) {
        gen::TermShape ts;
        ts.depth = 4;
        ts.ops = {Op::P, Op::S, Op::I, Op::Not, Op::J, Op::Ex, Op::Cup, Op::Cap, Op::Minus, Op::Sint, Op::H};
        ts.vocab = gen::random_vocabulary(rng, 2, 0, 3);
        const Term t = gen::random_term(rng, ts);
        REQUIRE(equal(parse_term(print_term(t)), t));
        gen::FormulaShape fs;
        fs.depth = 4;
        fs.vocab = ts.vocab;
        const Formula f = gen::random_formula(rng, fs);
        REQUIRE(equal(parse_formula(print_formula(f)), f));
    }
}

TEST_CASE("operator signatures") {
    CHECK(term_signature(parse_term("p(I(p(p(R/3))))")).ops == std::set<std::string>{"p", "I"});
    const auto e = term_signature(parse_term("e"));
    CHECK(e.ops.empty());
    CHECK(e.uses_e);
    CHECK(term_signature(parse_term("J(not(R/1), ex(S/2))")).ops == std::set<std::string>{"J", "not", "ex"});
}

TEST_CASE("fragment classification") {
    const auto cq = classify_formula(parse_formula("exists v2. exists v3. (R(v1,v2,v3) & S(v2,v3,v4,v5))"));
    CHECK(cq.cq);
    CHECK(cq.cqe);
    CHECK(classify_formula(parse_formula("(forall v1. P(v1)) & (forall v2. Q(v2))")).fragment_f);
    const auto shared = classify_formula(parse_formula("R(v1,v2) & P(v1)"));
    CHECK_FALSE(shared.fragment_f);
    CHECK_FALSE(shared.fluted);
    CHECK(classify_formula(parse_formula("exists v2. (R(v1,v2) & P(v2))")).fluted);
    CHECK(classify_formula(parse_formula("forall v1. exists v2. (R(v1,v2) & ~R(v2,v1))")).herbrand);
    CHECK_FALSE(classify_formula(parse_formula("forall v1. (P(v1) | Q(v1))")).herbrand);
    CHECK(classify_formula(parse_formula("exists v1. exists v2. (R(v1,v2) & ~S(v1,v2))")).guarded);
    CHECK(classify_formula(parse_formula("exists v1. (v1 = v1 & P(v1))")).guarded);
    CHECK_FALSE(classify_formula(parse_formula("exists v1. exists v2. (P(v1) & P(v2))")).guarded);
    CHECK(classify_formula(parse_formula("forall v1. exists v2. R(v2,v1)")).fo2);
    CHECK_FALSE(classify_formula(parse_formula("exists v1. R(v1,v1,v1)")).fo2);
    CHECK(classify_formula(parse_formula("R(v1,v2)")).relational_atom);
    CHECK_FALSE(classify_formula(parse_formula("v1 = v2")).relational_atom);
    CHECK(classify_formula(parse_formula("v1 = v2")).atom);
}

TEST_CASE("fragment flags are consistent") {
    gen::Rng rng(15);
    for (int i = 0; i < 2000; ++i) {
        gen::FormulaShape shape;
        shape.vocab = gen::random_vocabulary(rng, 2, 0, 3);
        const Formula f = gen::random_formula(rng, shape);
        const auto r = classify_formula(f);
        if (r.cq) CHECK(r.cqe);
        if (r.relational_atom) CHECK(r.atom);
        if (r.atom) CHECK(r.quantifier_free);
        if (r.herbrand) CHECK(is_sentence(f));
        if (r.guarded || r.fo2) CHECK(is_sentence(f));
    }
}

TEST_CASE("derived connectives normalize away") {
    gen::Rng rng(16);
    for (int i = 0; i < 300; ++i) {
        gen::FormulaShape shape;
        shape.vocab = gen::random_vocabulary(rng, 2, 0, 2);
        const Formula f = gen::random_formula(rng, shape);
        const Formula g = normalize(f);
        CHECK(is_normalized(g));
        const Structure m = gen::random_structure(rng, shape.vocab, 1 + gen::pick(rng, 3));
        CHECK(fo_evaluate(f, m) == fo_evaluate(g, m));
    }
}
