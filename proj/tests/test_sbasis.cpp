#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace iwt;

namespace {

Poly x(int i) { return Poly::monomial(Monomial::var(static_cast<std::size_t>(i))); }

bool has_lead(const StandardBasis& sb, const Monomial& m) {
    for (const auto& [comp, lead] : sb.leads)
        if (comp == 0 && lead == m) return true;
    return false;
}

Monomial mono(std::initializer_list<int> e) {
    Monomial m;
    int i = 0;
    for (int v : e) {
        m.exp[i++] = static_cast<std::uint16_t>(v);
        m.deg += v;
    }
    return m;
}

}  // namespace

TEST_CASE("standard basis of (p, b1)") {
    auto sb = standard_basis(cyclic(lambda(1), {c(3), b(1)}), kPrec);
    CHECK(has_lead(sb, mono({1, 0})));
    CHECK(has_lead(sb, mono({0, 1})));
    CHECK(krull_dim(sb.leading) == 0);
}

TEST_CASE("standard basis of (p - b1)") {
    auto sb = standard_basis(cyclic(lambda(1), {c(3) - b(1)}), kPrec);
    auto g = groebner(GradedSubmodule(3, 2, 1, {{x(0) - x(1)}}));
    // same lead terms as the ideal (X0 - X1) of F_p[X0, X1]
    auto a = sb.leading.leading_terms(), e = g.leading_terms();
    REQUIRE(a.size() == e.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].front().mono == e[i].front().mono);
    CHECK(krull_dim(sb.leading) == 1);
}

TEST_CASE("standard basis of nothing") {
    auto sb = standard_basis(free_module(lambda(2), 1), kPrec);
    CHECK(sb.basis.empty());
    CHECK(sb.leads.empty());
}

TEST_CASE("gr_module") {
    auto g = gr_module(cyclic(lambda(1), {c(3)}), kPrec);
    CHECK(krull_dim(g) == 1);
    CHECK(normal_form(Row{x(0)}, g)[0].is_zero());
    CHECK_FALSE(normal_form(Row{x(1)}, g)[0].is_zero());

    CHECK(krull_dim(gr_module(free_module(lambda(1), 1), kPrec)) == 2);

    auto g2 = gr_module(cyclic(lambda(2), {c(3), b(1)}), kPrec);
    CHECK(krull_dim(g2) == 1);
    CHECK(normal_form(Row{x(1)}, g2)[0].is_zero());
}

TEST_CASE("gr_module of residue rings kills X0") {
    auto r = RingContext::residue_field_algebra(3, 2, kPrec);
    auto g = gr_module(Presentation::free(r, kPrec, 1), kPrec);
    CHECK(krull_dim(g) == 2);
}

TEST_CASE("gr_length") {
    auto len = gr_length(cyclic(lambda(1), {c(9), b(1, 2)}), kPrec);
    REQUIRE(len);
    CHECK(*len == 4);
    CHECK_FALSE(gr_length(cyclic(lambda(1), {c(3)}), kPrec));
}

TEST_CASE("certify") {
    SUBCASE("stable monomial ideal") {
        auto m = cyclic(lambda(1), {c(3)});
        auto cv = certify<int>([&](Precision q) { return gr_dimension(m, q); }, {4, 6}, 3);
        CHECK(cv.status == Certification::certified);
        CHECK(cv.value == 1);
        CHECK(cv.escalations == 0);
        CHECK(cv.history == std::vector<int>{1, 1});
    }
    SUBCASE("coefficient p^(a-1) escalates once") {
        auto m = cyclic(lambda(1), {b(1).scaled(27)});
        auto cv = certify<int>([&](Precision q) { return gr_dimension(m, q); }, {4, 8}, 3);
        CHECK(cv.status == Certification::certified);
        CHECK(cv.escalations == 1);
        CHECK(cv.value == 1);
        CHECK(cv.history.front() == 2);
    }
    SUBCASE("zero module") {
        auto m = cyclic(lambda(1), {c(1)});
        auto cv = certify<int>([&](Precision q) { return gr_dimension(m, q); }, {4, 6}, 3);
        CHECK(cv.status == Certification::certified);
        CHECK(cv.value == kMinusInfinity);
        CHECK(cv.escalations == 0);
    }
    SUBCASE("never agreeing is heuristic") {
        int calls = 0;
        auto cv = certify<int>([&](Precision) { return calls++; }, {4, 6}, 2);
        CHECK(cv.status == Certification::heuristic);
        CHECK(cv.escalations == 2);
        CHECK(cv.history.size() == 4);
    }
}

TEST_CASE("working precision covers heavy relations") {
    auto m = cyclic(lambda(1), {b(1, 3).scaled(27)});
    Precision q = gr_working_precision(m, {4, 8});
    CHECK(std::min(q.a, q.N) > 6);
    CHECK(gr_dimension(m, q) == 1);
}

TEST_CASE("kernel of multiplication by p") {
    auto r = lambda(1);
    auto lp = cyclic(r, {c(3)});
    auto k1 = simplify(kernel(ModuleMap{lp, lp, {{c(3)}}}));
    CHECK(k1.rank == 1);
    REQUIRE(k1.rels.size() == 1);
    CHECK(local::contains(k1.rels, Row{c(3)}, 1, k1.domain()));
    CHECK(local::contains(Matrix{Row{c(3)}}, k1.rels[0], 1, k1.domain()));
    CHECK(gr_dimension(k1, kPrec) == 1);

    auto free1 = free_module(r, 1);
    CHECK(is_zero(kernel(ModuleMap{free1, free1, {{c(3)}}})));

    auto lp2 = cyclic(r, {c(9)});
    auto k2 = simplify(kernel(ModuleMap{lp2, lp2, {{c(3)}}}));
    CHECK(k2.rank == 1);
    REQUIRE(k2.rels.size() == 1);
    CHECK(local::contains(k2.rels, Row{c(3)}, 1, k2.domain()));
    CHECK(local::contains(Matrix{Row{c(3)}}, k2.rels[0], 1, k2.domain()));
    CHECK(gr_dimension(k2, kPrec) == 1);
}

TEST_CASE("simplify and constructions") {
    auto r = lambda(1);
    auto m = module(r, 2, {{c(3), c(-1)}, {Poly(), c(3)}});
    auto s = simplify(m);
    CHECK(s.rank == 1);
    REQUIRE(s.rels.size() == 1);
    // the surviving relation generates (p^2)
    CHECK(local::contains(s.rels, Row{c(9)}, 1, s.domain()));
    CHECK(local::contains(Matrix{Row{c(9)}}, s.rels[0], 1, s.domain()));

    auto lp = cyclic(r, {c(3)});
    auto ck = simplify(coker(ModuleMap{free_module(r, 1), lp, {{Poly()}}}));
    CHECK(ck.rank == 1);
    CHECK(local::contains(ck.rels, Row{c(3)}, 1, ck.domain()));

    auto ds = direct_sum(lp, cyclic(r, {c(27)}));
    CHECK(ds.rank == 2);
    REQUIRE(ds.rels.size() == 2);
    CHECK(ds.rels[0] == Row{c(3), Poly()});
    CHECK(ds.rels[1] == Row{Poly(), c(27)});
    CHECK(min_generators(ds) == 2);
}

TEST_CASE("module maps are checked") {
    auto r = lambda(1);
    auto lp = cyclic(r, {c(3)});
    auto free1 = free_module(r, 1);
    CHECK(ModuleMap{lp, lp, {{b(1)}}}.well_defined());
    CHECK_FALSE((ModuleMap{lp, free1, {{c(1)}}}.well_defined()));
    CHECK(ModuleMap{free1, lp, {{c(1)}}}.well_defined());
}

TEST_CASE("property: rows reduce to zero and lengths match the product formula") {
    std::mt19937_64 rng(29);
    auto r = lambda(1);
    for (int t = 0; t < 25; ++t) {
        int k = 1 + static_cast<int>(rng() % 3), l = 1 + static_cast<int>(rng() % 3);
        // Λ/(p^k, b^l) = (Z/p^k)[b]/(b^l) has length k·l
        auto m = cyclic(r, {c(1).scaled(ipow(3, k)), b(1, l)});
        Precision q = gr_working_precision(m, kPrec);
        auto len = gr_length(m, q);
        REQUIRE(len);
        CHECK(*len == static_cast<std::size_t>(k * l));
    }
}

TEST_CASE("property: hypersurfaces have dimension r") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        int rr = 1 + static_cast<int>(rng() % 2);
        auto ring = lambda(rr);
        Element f = random_element(ring, kPrec, rng, 3, 2);
        if (f.is_zero() || f.v_M().value == 0) continue;
        auto m = cyclic(ring, {f.to_poly()});
        CHECK(gr_dimension(m, gr_working_precision(m, kPrec)) == rr);
    }
}
