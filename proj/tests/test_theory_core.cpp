#include <doctest.h>

#include <random>

#include "mkan/algebra.hpp"

using namespace mkan;

namespace {

FiniteAlgebra z2_plus_zero() {
    Signature sig({{"+", 2}, {"0", 0}});
    return FiniteAlgebra("Z2_plus", 2, std::move(sig), {{0, 1, 1, 0}, {0}});
}

Term meet3() {
    return Term::app("meet", {Term::app("meet", {Term::var(0), Term::var(1)}), Term::var(2)});
}

FiniteAlgebra random_algebra(int m, std::mt19937& rng) {
    Signature sig({{"f", 2}, {"g", 1}});
    std::uniform_int_distribution<int> pick(0, m - 1);
    std::vector<int> f(static_cast<std::size_t>(m) * m), g(static_cast<std::size_t>(m));
    for (auto& v : f) v = pick(rng);
    for (auto& v : g) v = pick(rng);
    return FiniteAlgebra("rand", m, std::move(sig), {std::move(f), std::move(g)});
}

}

TEST_CASE("eval_term: projections and table lookups") {
    FiniteAlgebra z8 = cyclic_group(8);
    int env[3] = {5, 7, 2};
    CHECK(eval_term(z8, Term::var(1), env) == 7);

    FiniteAlgebra z4 = cyclic_group(4);
    Term add01 = Term::app("+", {Term::var(0), Term::var(1)});
    int env2[2] = {3, 2};
    CHECK(eval_term(z4, add01, env2) == 1);

    FiniteAlgebra z3s = cyclic_subtraction(3);
    Term nested = Term::app("sub", {Term::var(0), Term::app("sub", {Term::var(1), Term::var(2)})});
    int env3[3] = {0, 1, 1};
    CHECK(eval_term(z3s, nested, env3) == 0);
}

TEST_CASE("eval_term: projection law on random environments") {
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        int m = 2 + static_cast<int>(rng() % 5);
        FiniteAlgebra alg = random_algebra(m, rng);
        std::vector<int> env(4);
        for (auto& v : env) v = static_cast<int>(rng() % static_cast<unsigned>(m));
        for (int i = 0; i < 4; ++i) CHECK(eval_term(alg, Term::var(i), env) == env[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("eval_term: error cases") {
    FiniteAlgebra z4 = cyclic_group(4);
    int env[2] = {0, 1};
    CHECK_THROWS_AS(eval_term(z4, Term::app("mystery", {}), env), Error);
    CHECK_THROWS_AS(eval_term(z4, Term::app("+", {Term::var(0)}), env), Error);
    CHECK_THROWS_AS(eval_term(z4, Term::var(2), env), Error);
    try {
        eval_term(z4, Term::var(5), env);
        FAIL("expected VarOutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::VarOutOfRange);
    }
}

TEST_CASE("check_maltsev_axioms: group difference term holds") {
    FiniteAlgebra z4 = cyclic_group(4);
    MaltsevReport report = check_maltsev_axioms(z4, group_maltsev_term());
    CHECK(report.holds);
    // independent exhaustive re-check over all 16 pairs
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            CHECK((a - a + b) % 4 == b);
            CHECK(((a - b + b) % 4 + 4) % 4 == a);
        }
}

TEST_CASE("check_maltsev_axioms: semilattice meet fails at (1,0), axiom 2") {
    FiniteAlgebra sl = meet_semilattice2();
    MaltsevReport report = check_maltsev_axioms(sl, meet3());
    REQUIRE_FALSE(report.holds);
    REQUIRE(report.counterexample.has_value());
    CHECK(report.counterexample->a == 1);
    CHECK(report.counterexample->b == 0);
    CHECK(report.counterexample->axiom == 2);
    // 1 ^ 0 ^ 0 = 0 != 1
    int env[3] = {1, 0, 0};
    CHECK(eval_term(sl, meet3(), env) == 0);
}

TEST_CASE("check_maltsev_axioms: Z/3 double subtraction holds") {
    FiniteAlgebra z3s = cyclic_subtraction(3);
    Term t = Term::app("sub", {Term::var(0), Term::app("sub", {Term::var(1), Term::var(2)})});
    CHECK(check_maltsev_axioms(z3s, t).holds);
}

TEST_CASE("check_maltsev_axioms: holding term is idempotent on the diagonal") {
    std::vector<std::pair<FiniteAlgebra, Term>> cases;
    for (int m = 2; m <= 6; ++m) cases.emplace_back(cyclic_group(m), group_maltsev_term());
    cases.emplace_back(cyclic_subtraction(3),
                       Term::app("sub", {Term::var(0), Term::app("sub", {Term::var(1), Term::var(2)})}));
    for (const auto& [alg, t] : cases) {
        REQUIRE(check_maltsev_axioms(alg, t).holds);
        for (int a = 0; a < alg.size(); ++a) {
            int env[3] = {a, a, a};
            CHECK(eval_term(alg, t, env) == a);
        }
    }
}

TEST_CASE("check_maltsev_axioms: rejects non-ternary terms") {
    FiniteAlgebra z4 = cyclic_group(4);
    CHECK_THROWS_AS(check_maltsev_axioms(z4, Term::var(3)), Error);
}

TEST_CASE("is_homomorphism: mod-2 reduction on the group signature") {
    FiniteAlgebra z4 = cyclic_group(4);
    FiniteAlgebra z2 = cyclic_group(2);
    std::vector<int> mod2 = {0, 1, 0, 1};
    CHECK(is_homomorphism(z4, z2, mod2).holds);
}

TEST_CASE("is_homomorphism: semilattice negation fails at meet(0,1)") {
    FiniteAlgebra sl = meet_semilattice2();
    std::vector<int> swap = {1, 0};
    HomReport report = is_homomorphism(sl, sl, swap);
    REQUIRE_FALSE(report.holds);
    REQUIRE(report.counterexample.has_value());
    CHECK(report.counterexample->op == "meet");
    CHECK(report.counterexample->args == std::vector<int>{0, 1});
}

TEST_CASE("is_homomorphism: identity map on random tables") {
    std::mt19937 rng(11);
    for (int round = 0; round < 30; ++round) {
        int m = 2 + static_cast<int>(rng() % 4);
        FiniteAlgebra alg = random_algebra(m, rng);
        std::vector<int> id(static_cast<std::size_t>(m));
        for (int x = 0; x < m; ++x) id[static_cast<std::size_t>(x)] = x;
        CHECK(is_homomorphism(alg, alg, id).holds);
    }
}

TEST_CASE("is_homomorphism: closed under composition (diagonal and projection)") {
    std::mt19937 rng(13);
    for (int round = 0; round < 15; ++round) {
        int m = 2 + static_cast<int>(rng() % 3);
        FiniteAlgebra alg = random_algebra(m, rng);
        FiniteAlgebra alg2 = power_algebra(alg, 2);
        std::vector<int> diag(static_cast<std::size_t>(m));
        for (int x = 0; x < m; ++x) diag[static_cast<std::size_t>(x)] = x + x * m;
        std::vector<int> proj(static_cast<std::size_t>(m * m));
        for (int x = 0; x < m * m; ++x) proj[static_cast<std::size_t>(x)] = x % m;
        REQUIRE(is_homomorphism(alg, alg2, diag).holds);
        REQUIRE(is_homomorphism(alg2, alg, proj).holds);
        // diag then proj, and proj then diag
        std::vector<int> comp1(static_cast<std::size_t>(m));
        for (int x = 0; x < m; ++x) comp1[static_cast<std::size_t>(x)] = proj[static_cast<std::size_t>(diag[static_cast<std::size_t>(x)])];
        std::vector<int> comp2(static_cast<std::size_t>(m * m));
        for (int x = 0; x < m * m; ++x) comp2[static_cast<std::size_t>(x)] = diag[static_cast<std::size_t>(proj[static_cast<std::size_t>(x)])];
        CHECK(is_homomorphism(alg, alg, comp1).holds);
        CHECK(is_homomorphism(alg2, alg2, comp2).holds);
    }
}

TEST_CASE("is_homomorphism: signature mismatch is an error") {
    FiniteAlgebra z2 = cyclic_group(2);
    FiniteAlgebra sl = meet_semilattice2();
    std::vector<int> id = {0, 1};
    CHECK_THROWS_AS(is_homomorphism(z2, sl, id), Error);
}

TEST_CASE("FiniteAlgebra: table shape and range validation") {
    Signature sig({{"f", 2}});
    CHECK_THROWS_AS(FiniteAlgebra("bad", 2, sig, {{0, 1, 1}}), Error);       // wrong length
    CHECK_THROWS_AS(FiniteAlgebra("bad", 2, sig, {{0, 1, 1, 2}}), Error);    // entry = carrier
    CHECK_THROWS_AS(FiniteAlgebra("bad", 0, sig, {{}}), Error);              // empty carrier
    CHECK_NOTHROW(FiniteAlgebra("ok", 2, sig, {{0, 1, 1, 0}}));
}

TEST_CASE("FiniteAlgebra: constants have tables of length one") {
    FiniteAlgebra alg = z2_plus_zero();
    CHECK(alg.table(1).size() == 1);
    CHECK(alg.apply(1, {}) == 0);
}

TEST_CASE("FiniteAlgebra: attach_maltsev_term verifies the axioms") {
    FiniteAlgebra sl = meet_semilattice2();
    CHECK_THROWS_AS(sl.attach_maltsev_term(meet3()), Error);
    FiniteAlgebra z5 = cyclic_group(5);
    CHECK_NOTHROW(z5.attach_maltsev_term(group_maltsev_term()));
    CHECK(z5.maltsev_term().has_value());
}

TEST_CASE("Signature: rejects duplicates and malformed names") {
    CHECK_THROWS_AS(Signature({{"f", 2}, {"f", 1}}), Error);
    CHECK_THROWS_AS(Signature({{"", 1}}), Error);
    CHECK_THROWS_AS(Signature({{"a b", 1}}), Error);
    CHECK_THROWS_AS(Signature({{"f", -1}}), Error);
}
