#include <doctest.h>

#include "support.hpp"

using namespace iwt;

namespace {

// M ≅ Λ/(g) for a cyclic presentation, checked by mutual containment of the relation ideals.
bool cyclic_equals(const Presentation& m, const Poly& g) {
    auto s = simplify(m);
    if (s.rank != 1 || s.rels.size() != 1) return false;
    Domain dom = s.domain();
    return local::contains(s.rels, Row{g}, 1, dom) && local::contains(Matrix{Row{g}}, s.rels[0], 1, dom);
}

std::size_t length(const Presentation& m) {
    auto s = simplify(m);
    auto len = gr_length(s, gr_working_precision(s, s.prec));
    REQUIRE(len);
    return *len;
}

long binomial(int n, int k) {
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_CASE("resolution of the residue field is Koszul") {
    for (int r = 1; r <= 2; ++r) {
        auto ring = lambda(r);
        auto res = minimal_free_resolution(residue_field(ring, kPrec));
        CHECK(res.complete);
        REQUIRE(res.ranks.size() == static_cast<std::size_t>(r + 2));
        for (int i = 0; i <= r + 1; ++i) CHECK(res.ranks[i] == static_cast<std::size_t>(binomial(r + 1, i)));
        CHECK(tor_k(res, 1) == static_cast<std::size_t>(r + 1));
    }
}

TEST_CASE("resolutions of Λ/p and Λ") {
    auto ring = lambda(1);
    auto res = minimal_free_resolution(cyclic(ring, {c(3)}));
    CHECK(res.ranks == std::vector<std::size_t>{1, 1});
    CHECK(tor_k(res, 1) == 1);
    auto free = minimal_free_resolution(free_module(ring, 1));
    CHECK(free.ranks == std::vector<std::size_t>{1});
    CHECK(free.length() == 0);
    CHECK(ext_k(free, 1) == 0);
    CHECK(ext_k(free, 0) == 1);
}

TEST_CASE("adjoints of cyclic modules") {
    auto ring = lambda(1);
    for (int m = 1; m <= 3; ++m) {
        Poly pm = c(1).scaled(ipow(3, m));
        auto e1 = ext(cyclic(ring, {pm}), 1).module;
        CHECK(cyclic_equals(e1, pm));
    }
    CHECK(is_zero(ext(cyclic(ring, {c(3)}), 0).module));
    CHECK(is_zero(ext(cyclic(ring, {c(3)}), 2).module));
    CHECK(is_zero(ext(cyclic(ring, {c(3)}), 5).module));
    CHECK(is_zero(ext(cyclic(ring, {c(3)}), -1).module));
}

TEST_CASE("top adjoint of the residue field") {
    for (int r = 1; r <= 2; ++r) {
        auto ring = lambda(r);
        auto k = residue_field(ring, kPrec);
        for (int i = 0; i < ring->d(); ++i) CHECK(is_zero(ext(k, i).module));
        CHECK(length(ext(k, ring->d()).module) == 1);
    }
}

TEST_CASE("transpose") {
    auto ring = lambda(1);
    CHECK(cyclic_equals(transpose(cyclic(ring, {c(3)})), c(3)));
    CHECK(is_zero(transpose(free_module(ring, 1))));
    CHECK(cyclic_equals(transpose(cyclic(ring, {b(1)})), b(1)));
}

TEST_CASE("loop") {
    auto ring = lambda(1);
    auto o = simplify(loop(cyclic(ring, {c(3)})));
    CHECK(o.rank == 1);
    CHECK(o.rels.empty());
    auto ok = simplify(loop(residue_field(ring, kPrec)));
    CHECK(ok.rank == 2);
    CHECK(ok.rels.size() == 1);
    CHECK(is_zero(loop(free_module(ring, 1))));
}

TEST_CASE("duals and the bidual map") {
    auto ring = lambda(1);
    auto lam = free_module(ring, 1);
    auto bd = bidual_map(lam);
    CHECK(is_zero(bd.kernel));
    CHECK(is_zero(bd.cokernel));
    CHECK(simplify(dual(lam)).rank == 1);

    auto lp = cyclic(ring, {c(3)});
    auto bp = bidual_map(lp);
    CHECK(is_zero(bp.bidual));
    CHECK(cyclic_equals(bp.kernel, c(3)));

    auto mk = direct_sum(lam, residue_field(ring, kPrec));
    auto bk = bidual_map(mk);
    CHECK(length(bk.kernel) == 1);
    CHECK(is_zero(bk.cokernel));
}

TEST_CASE("canonical sequence") {
    auto ring = lambda(1);
    auto lp = canonical_sequence(cyclic(ring, {c(3)}));
    CHECK(cyclic_equals(lp.e1d, c(3)));
    CHECK(is_zero(lp.e2d));
    CHECK(is_zero(lp.phi.bidual));

    auto lam = canonical_sequence(free_module(ring, 1));
    CHECK(is_zero(lam.e1d));
    CHECK(is_zero(lam.e2d));

    auto mk = canonical_sequence(direct_sum(free_module(ring, 1), residue_field(ring, kPrec)));
    CHECK(length(mk.e1d) == 1);
    CHECK(is_zero(mk.e2d));
}

TEST_CASE("rules mode resolutions are refused") {
    const Precision q{4, 6};
    auto h = RingContext::congruence_heisenberg(3, q);
    try {
        (void)minimal_free_resolution(residue_field(h, q));
        FAIL("expected unsupported_mode");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unsupported_mode);
    }
}

TEST_CASE("property: resolutions are minimal, exact and match Koszul homology") {
    CorpusConfig cfg;
    cfg.count = 12;
    auto corpus = random_corpus(cfg, 41);
    for (const auto& m : corpus) {
        Resolution res;
        try {
            res = minimal_free_resolution(m);
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::step_budget);
            continue;
        }
        CHECK(res.complete);
        CHECK(res.length() <= static_cast<std::size_t>(m.ring->d()));
        Domain dom = m.domain();
        for (std::size_t i = 1; i <= res.length(); ++i) {
            for (const auto& row : res.map(i))
                for (const auto& e : row)
                    if (!e.is_zero()) CHECK(exact_valuation(e, 3) >= 1);
            if (i + 1 <= res.length()) {
                auto comp = local::multiply(res.map(i + 1), res.map(i), res.ranks[i - 1], dom);
                CHECK(local::is_zero_matrix(local::normalized(comp, dom)));
            }
        }
        for (int i = 0; i <= m.ring->d(); ++i) CHECK(koszul_tor(m, i) == tor_k(res, i));
        // pd from Betti length and from the last nonvanishing adjoint
        int last = -1;
        for (int i = 0; i <= m.ring->d(); ++i)
            if (!is_zero(ext(res, i).module)) last = i;
        CHECK(last == static_cast<int>(res.length()));
    }
}

TEST_CASE("property: projective modules have no higher adjoints") {
    auto ring = lambda(2);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto f = free_module(ring, n);
        CHECK(is_zero(transpose(f)));
        for (int i = 1; i <= ring->d(); ++i) CHECK(is_zero(ext(f, i).module));
    }
}
