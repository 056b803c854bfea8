#include <doctest.h>

#include "gra/check/generate.hpp"
#include "gra/decide/fragment_f.hpp"
#include "gra/decide/herbrand.hpp"
#include "gra/decide/oracle.hpp"
#include "gra/decide/procedures.hpp"
#include "gra/decide/reduce.hpp"
#include "gra/decide/router.hpp"
#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"
#include "support/oracles.hpp"

using namespace gra;

namespace {

Formula f_(const std::string& s) { return parse_formula(s); }
Term t_(const std::string& s) { return parse_term(s); }

OracleOptions bound(std::size_t n) {
    OracleOptions o;
    o.max_domain = n;
    return o;
}

bool brute_force(const Term& t, std::size_t max_n) {
    bool found = false;
    for (std::size_t n = 1; n <= max_n && !found; ++n) {
        testing::for_each_structure(term_vocabulary(t), n, [&](const Structure& m) {
            found = !evaluate(t, m).empty();
            return !found;
        });
    }
    return found;
}

}  // namespace

TEST_CASE("oracle verdicts") {
    const auto e = sat_oracle(t_("e"), bound(1));
    CHECK(e.kind == VerdictKind::sat);
    CHECK(e.witness->domain().size() == 1);
    const auto ne = sat_oracle(t_("not(I(e))"), bound(2));
    CHECK(ne.kind == VerdictKind::unsat_up_to_bound);
    CHECK(ne.bound == std::size_t{2});
    const auto contra = sat_oracle(f_("exists v1. (P(v1) & ~P(v1))"));
    CHECK(contra.kind == VerdictKind::unsat_up_to_bound);
    CHECK(contra.bound == std::size_t{3});
    CHECK(sat_oracle(t_("not(e)"), bound(3)).witness->domain().size() == 2);
}

TEST_CASE("oracle agrees with exhaustive enumeration and is deterministic") {
    gen::Rng rng(31);
    for (int i = 0; i < 150; ++i) {
        gen::TermShape shape;
        shape.depth = 3;
        shape.ops = {Op::P, Op::S, Op::I, Op::Not, Op::J, Op::Ex, Op::Cup, Op::Minus, Op::Sint};
        shape.vocab = gen::random_vocabulary(rng, 2, 0, 2);
        shape.max_arity = 3;
        const Term t = gen::random_term(rng, shape);
        OracleOptions pruned = bound(2), full = bound(2), parallel = bound(2);
        full.prune = false;
        parallel.jobs = 3;
        const auto a = sat_oracle(t, pruned), b = sat_oracle(t, full), c = sat_oracle(t, parallel);
        CHECK_MESSAGE((a.kind == VerdictKind::sat) == brute_force(t, 2), print_term(t));
        CHECK(a.kind == b.kind);
        CHECK(a.kind == c.kind);
        if (a.kind == VerdictKind::sat) {
            CHECK(witness_verifies(t, *a.witness));
            CHECK(*a.witness == *b.witness);
            CHECK(*a.witness == *c.witness);
        }
    }
}

TEST_CASE("oracle budget") {
    OracleOptions o = bound(3);
    o.budget = 10;
    o.prune = false;
    try {
        sat_oracle(t_("J(R/3, not(R/3))"), o);
        FAIL("budget not enforced");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget_exceeded);
    }
}

TEST_CASE("join-free terms") {
    CHECK(sat_joinfree(t_("ex(not(e))")).kind == VerdictKind::sat);
    CHECK(sat_joinfree(t_("not(I(e))")).kind == VerdictKind::unsat);
    CHECK(sat_joinfree(t_("not(ex(not(e)))")).kind == VerdictKind::sat);
    CHECK(sat_joinfree(t_("not(ex(e))")).kind == VerdictKind::unsat);
    CHECK(sat_joinfree(t_("not(R/2)")).kind == VerdictKind::sat);
    CHECK(sat_joinfree(t_("I(not(e))")).kind == VerdictKind::unsat);
    CHECK_THROWS_AS(sat_joinfree(t_("J(e, e)")), Error);
    const auto v = sat_joinfree(t_("not(ex(not(e)))"));
    CHECK(witness_verifies(t_("not(ex(not(e)))"), *v.witness));
}

TEST_CASE("quantifier-free terms") {
    CHECK(sat_quantifier_free(t_("J(P/1, not(P/1))")).kind == VerdictKind::sat);
    CHECK(sat_quantifier_free(t_("I(J(P/1, not(P/1)))")).kind == VerdictKind::unsat);
    CHECK(sat_quantifier_free(t_("I(J(e, not(e)))")).kind == VerdictKind::unsat);
    CHECK(sat_quantifier_free(t_("J(e, not(e))")).kind == VerdictKind::sat);
    CHECK_THROWS_AS(sat_quantifier_free(t_("ex(P/1)")), Error);
}

TEST_CASE("one-element models of Herbrand sentences") {
    CHECK(herbrand_one_element(herbrand_from_formula(f_("forall v1. exists v2. (R(v1,v2) & ~R(v2,v2))"))) == false);
    CHECK(herbrand_one_element(herbrand_from_formula(f_("forall v1. exists v2. (R(v1,v2) & ~S(v2,v1))"))));
    CHECK_FALSE(herbrand_one_element(herbrand_from_formula(f_("exists v1. exists v2. ~v1 = v2"))));
}

TEST_CASE("equality elimination") {
    using O = EqualityElimination::Outcome;
    const auto subst = herbrand_eliminate_equality(herbrand_from_formula(f_("forall v1. exists v2. (v1 = v2 & R(v1,v2))")));
    REQUIRE(subst.outcome == O::residue);
    CHECK(print_formula(herbrand_to_formula(subst.residue)) == "forall v1. R(v1,v1)");
    const auto one = herbrand_eliminate_equality(herbrand_from_formula(f_("forall v1. forall v2. v1 = v2")));
    CHECK(one.outcome == O::size_one);
    CHECK(one.one_element);
    const auto ineq = herbrand_eliminate_equality(herbrand_from_formula(f_("forall v1. exists v2. ~v1 = v2")));
    REQUIRE(ineq.outcome == O::residue);
    CHECK_FALSE(ineq.fresh_symbol.empty());
    CHECK(print_formula(herbrand_to_formula(ineq.residue)).find(ineq.fresh_symbol) != std::string::npos);
    CHECK(herbrand_eliminate_equality(herbrand_from_formula(f_("exists v1. ~v1 = v1"))).outcome == O::unsat);
    CHECK(herbrand_eliminate_equality(herbrand_from_formula(f_("exists v1. forall v2. ~v1 = v2"))).outcome == O::unsat);
}

TEST_CASE("Herbrand decisions") {
    const Formula f = f_("forall v1. exists v2. (R(v1,v2) & ~R(v2,v2))");
    const auto v = sat_herbrand(herbrand_from_formula(f));
    REQUIRE(v.kind == VerdictKind::sat);
    CHECK(v.witness->domain().size() >= 2);
    CHECK(witness_verifies(f, *v.witness));
    CHECK(sat_herbrand(herbrand_from_formula(f_("forall v1. exists v2. (R(v1,v2) & ~R(v1,v2))"))).kind ==
          VerdictKind::unsat);
    CHECK(sat_herbrand(herbrand_from_formula(f_("exists v1. forall v2. (R(v1,v2) & ~R(v2,v2))"))).kind ==
          VerdictKind::unsat);
    CHECK_THROWS_AS(herbrand_from_formula(f_("forall v1. (P(v1) | Q(v1))")), Error);
    CHECK_THROWS_AS(herbrand_from_formula(f_("forall v1. forall v1. P(v1)")), Error);
}

TEST_CASE("Herbrand verdicts agree with the oracle") {
    gen::Rng rng(32);
    const char* letters[] = {"P(v1)", "P(v2)", "R(v1,v2)", "R(v2,v1)", "R(v1,v1)", "R(v2,v2)", "v1 = v2"};
    for (int i = 0; i < 300; ++i) {
        std::string matrix;
        const std::size_t count = 1 + gen::pick(rng, 3);
        for (std::size_t j = 0; j < count; ++j) {
            if (j) matrix += " & ";
            if (gen::coin(rng, 50)) matrix += "~";
            matrix += letters[gen::pick(rng, 7)];
        }
        std::string text = "(" + matrix + ")";
        for (const char* v : {"v2", "v1"}) text = std::string(gen::coin(rng, 50) ? "forall " : "exists ") + v + ". " + text;
        const Formula f = f_(text);
        const auto h = sat_herbrand(herbrand_from_formula(f));
        const auto o = sat_oracle(f, bound(2));
        CHECK_MESSAGE((h.kind == VerdictKind::sat) == (o.kind == VerdictKind::sat), text);
        if (h.kind == VerdictKind::sat) CHECK(witness_verifies(f, *h.witness));
    }
}

TEST_CASE("fragment F") {
    CHECK(sat_fragment_f(f_("(forall v1. P(v1)) & (exists v2. ~P(v2))")).kind == VerdictKind::unsat);
    CHECK(sat_fragment_f(f_("(forall v1. P(v1)) | (exists v2. ~P(v2))")).kind == VerdictKind::sat);
    CHECK(sat_fragment_f(f_("exists v1. (P(v1) & exists v2. ~P(v2))")).kind == VerdictKind::sat);
    CHECK_THROWS_AS(sat_fragment_f(f_("R(v1,v2) & P(v1)")), Error);
    const Formula pushed = push_quantifiers(negation_normal_form(f_("~(forall v1. (P(v1) & Q(v1)))")));
    CHECK(classify_formula(pushed).fragment_f);
    gen::Rng rng(33);
    for (std::size_t n = 1; n <= 2; ++n) {
        testing::for_each_structure({{"P", 1}, {"Q", 1}}, n, [&](const Structure& m) {
            CHECK(fo_evaluate(pushed, m) == fo_evaluate(f_("~(forall v1. (P(v1) & Q(v1)))"), m));
            return true;
        });
    }
}

TEST_CASE("SAT reductions") {
    const Prop contra = parse_prop("p1 & ~p1");
    CHECK(sat_router(reduce_sat_to_inj(contra), SatMethod::automatic).kind == VerdictKind::unsat);
    CHECK(sat_router(reduce_sat_to_njex(contra), SatMethod::automatic).kind == VerdictKind::unsat);
    CHECK(print_term(reduce_sat_to_njex(parse_prop("p1"))) == "not(ex(not(P1/1)))");
    CHECK(within_signature(reduce_sat_to_inj(parse_prop("p1 | (p2 -> p3)")), {"I", "not", "J"}));
    CHECK_THROWS_AS(cnf_to_prop(Cnf{2, {{1}, {}}}), Error);
    const Cnf cnf = parse_dimacs("c example\np cnf 3 2\n1 -2 0\n2 3 0\n");
    CHECK(cnf.variables == 3);
    CHECK(cnf.clauses.size() == 2);
    CHECK(parse_dimacs(print_dimacs(cnf)).clauses == cnf.clauses);
    gen::Rng rng(34);
    for (int i = 0; i < 60; ++i) {
        const std::size_t vars = 2 + gen::pick(rng, 5);
        const Cnf c = gen::random_cnf(rng, vars, 2 + gen::pick(rng, 4 * vars));
        const bool expected = testing::dpll_satisfiable(c);
        const Prop p = cnf_to_prop(c);
        CHECK(testing::brute_force_satisfiable(p, vars) == expected);
        for (const Term& t : {reduce_sat_to_inj(p), reduce_sat_to_njex(p)}) {
            const auto v = sat_router(t, SatMethod::automatic);
            CHECK(v.kind != VerdictKind::unsat_up_to_bound);
            CHECK((v.kind == VerdictKind::sat) == expected);
        }
    }
}

TEST_CASE("propositional syntax") {
    const Prop p = parse_prop("p1 -> p2 -> p3");
    CHECK(print_prop(parse_prop(print_prop(p))) == print_prop(p));
    CHECK(prop_holds(p, {false, true, true, false}) == false);
    CHECK(prop_holds(lower_prop(p), {false, true, true, false}) == false);
    CHECK_THROWS_AS(parse_prop("p1 &"), Error);
}

TEST_CASE("router") {
    const auto cq = sat_router(f_("exists v2. (R(v1,v2) & S(v2,v1))"), SatMethod::automatic);
    CHECK(cq.kind == VerdictKind::sat);
    CHECK(cq.method == "cqe");
    CHECK(witness_verifies(f_("exists v2. (R(v1,v2) & S(v2,v1))"), *cq.witness));
    CHECK(sat_router(t_("ex(not(e))"), SatMethod::automatic).method == "automaton");
    CHECK(sat_router(f_("forall v1. exists v2. (R(v1,v2) & ~R(v2,v1))"), SatMethod::automatic).method == "herbrand");
    CHECK_THROWS_AS(sat_router(t_("ex(not(e))"), SatMethod::cqe), Error);
    const auto fallback = sat_router(t_("H(P/1, not(P/1))"), SatMethod::automatic, bound(2));
    CHECK(fallback.method == "oracle");
    CHECK(fallback.kind == VerdictKind::sat);
    CHECK(parse_sat_method("fragment-f") == SatMethod::fragment_f);
    CHECK_FALSE(parse_sat_method("magic"));
    gen::Rng rng(35);
    for (int i = 0; i < 100; ++i) {
        gen::TermShape shape;
        shape.ops = {Op::P, Op::S, Op::I, Op::Not, Op::J, Op::Ex};
        shape.vocab = gen::random_vocabulary(rng, 2, 0, 2);
        shape.max_arity = 3;
        const Term t = gen::random_term(rng, shape);
        const auto v = sat_router(t, SatMethod::automatic, bound(2));
        if (v.kind == VerdictKind::sat) CHECK(witness_verifies(t, *v.witness));
        if (v.kind == VerdictKind::unsat) CHECK_FALSE(brute_force(t, 2));
    }
}
