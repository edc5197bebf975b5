#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace iwt;

namespace {

void check_ok(const AuditReport& a) {
    INFO(a.check);
    CHECK(a.instances > 0);
    CHECK(a.failed == 0);
    CHECK(a.heuristic == 0);
    CHECK(a.passed + a.skipped == a.instances);
    CHECK_FALSE(a.witness);
}

}  // namespace

TEST_CASE("auslander spot-check") {
    auto r1 = lambda(1);
    check_ok(auslander_spotcheck(cyclic(r1, {c(3)}), 8, 1));
    check_ok(auslander_spotcheck(residue_field(r1, kPrec), 8, 1));
    auto lam = auslander_spotcheck(free_module(r1, 1), 8, 1);
    CHECK(lam.failed == 0);
}

TEST_CASE("local duality on finite length modules") {
    auto r1 = lambda(1);
    check_ok(local_duality_finite(residue_field(r1, kPrec)));
    check_ok(local_duality_finite(cyclic(r1, {c(9), b(1)})));
    check_ok(local_duality_finite(cyclic(r1, {c(3), b(1, 2)})));
    check_ok(local_duality_finite(residue_field(lambda(2), kPrec)));
    try {
        (void)local_duality_finite(cyclic(r1, {c(3)}));
        FAIL("expected rejection of an infinite module");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
    }
}

TEST_CASE("induction") {
    auto r1 = lambda(1);
    check_ok(induction_check(cyclic(r1, {c(3)}), 2));
    check_ok(induction_check(free_module(r1, 1), 2));
    check_ok(induction_check(residue_field(r1, kPrec), 2));
    // the induced module of Λ(Z_p)/p has j = 1 and δ = 2
    auto up = cyclic(r1, {c(3)}).over(lambda(2));
    CHECK(grade_via_ext(up) == 1);
    CHECK(delta(up).value == 2);
}

TEST_CASE("torsion over a subgroup is pseudo-null") {
    auto r2 = lambda(2);
    check_ok(torsion_pseudonull_check(r2, c(3), kPrec));
    check_ok(torsion_pseudonull_check(r2, b(1), kPrec));
    check_ok(torsion_pseudonull_check(r2, c(1) + b(1), kPrec));
}

TEST_CASE("matrix oracle and symbols in rules mode") {
    const Precision q{4, 6};
    auto h = RingContext::congruence_heisenberg(3, q);
    check_ok(matrix_oracle_check(h, q, 32, 1));
    check_ok(symbol_multiplicativity(h, q, 50, 1));
    check_ok(symbol_multiplicativity(lambda(2), kPrec, 50, 2));
}

TEST_CASE("change of rings") {
    auto r1 = lambda(1);
    check_ok(change_of_rings_check(cyclic(r1, {c(3)})));
    check_ok(change_of_rings_check(cyclic(r1, {c(3), b(1)})));
    check_ok(change_of_rings_check(module(lambda(2), 2, {{c(3), Poly()}, {Poly(), c(3)}, {b(1), b(2)}})));
}

TEST_CASE("pseudo-isomorphism checks") {
    auto r2 = lambda(2);
    auto m = direct_sum(cyclic(r2, {c(3)}), cyclic(r2, {c(3), b(1)}));
    check_ok(pseudo_iso_e1_check(m));
    check_ok(e1_torsion_check(direct_sum(m, free_module(r2, 1))));
}

TEST_CASE("left exactness") {
    auto r1 = lambda(1);
    check_ok(left_exactness_check(cyclic(r1, {c(3)}), residue_field(r1, kPrec)));
    check_ok(left_exactness_check(free_module(r1, 1), cyclic(r1, {c(9)})));
    // p·: Λ/p → Λ/p² is injective
    auto lp = cyclic(r1, {c(3)});
    auto lp2 = cyclic(r1, {c(9)});
    check_ok(left_exactness_check(ModuleMap{lp, lp2, {{c(3)}}}));
    // the zero map is not
    CHECK_THROWS_AS(left_exactness_check(ModuleMap{lp, lp2, {{Poly()}}}), Error);
}

TEST_CASE("reports carry witnesses") {
    AuditReport a;
    a.check = "demo";
    auto m = cyclic(lambda(1), {c(3)});
    a.record(true, &m, 5, "fine");
    a.record(false, &m, 6, "broken");
    a.record(false, &m, 7, "broken again");
    CHECK(a.instances == 3);
    CHECK(a.failed == 2);
    REQUIRE(a.witness);
    CHECK(a.witness->seed == 6);
    CHECK_FALSE(a.witness->module.empty());
    CHECK_FALSE(a.ok());

    AuditReport b;
    b.record(true, &m, 1, "");
    b.merge(a);
    CHECK(b.instances == 4);
    CHECK(b.witness);
}

TEST_CASE("corpus is deterministic and scrambling preserves the module") {
    CorpusConfig cfg;
    cfg.count = 10;
    auto a = random_corpus(cfg, 99), b = random_corpus(cfg, 99);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].rels == b[i].rels);
        CHECK(a[i].rank == b[i].rank);
        CHECK(a[i].rank <= 3);
        CHECK(a[i].rels.size() <= 4);
        for (const auto& row : a[i].rels)
            for (const auto& e : row) CHECK(e.degree() <= 2);
    }
    std::mt19937_64 rng(4);
    for (std::size_t i = 0; i < 5; ++i) {
        try {
            CHECK(profile(scramble(a[i], rng)) == profile(a[i]));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::step_budget);
        }
    }
}

TEST_CASE("corpus run") {
    CorpusConfig cfg;
    cfg.count = 8;
    auto reps = corpus_run(cfg, 3, 4);
    REQUIRE(reps.size() == 4);
    for (const auto& r : reps) {
        INFO(r.check);
        CHECK(r.ok());
        CHECK(r.passed >= 1);
    }
}
