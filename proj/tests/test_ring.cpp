#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace iwt;

namespace {

const Precision kH{4, 6};

// C(t, k) for integer t (possibly negative).
mpz_class binom(long t, int k) {
    mpz_class num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= (t - i);
        den *= (i + 1);
    }
    return num / den;
}

Element elem(const Ring& r, Precision prec, const Poly& f) { return Element::from_poly(r, prec, f); }

}  // namespace

TEST_CASE("addition wraps coefficients") {
    auto r = RingContext::abelian(3, 1, {1, 8});
    Precision q{1, 8};
    Element x = elem(r, q, c(1) + b(1));
    Element y = elem(r, q, c(2) + b(1));
    Element s = x + y;
    CHECK(s == elem(r, q, b(1).scaled(2)));
    CHECK(s.to_poly().constant_term() == 0);
    CHECK(x + Element(r, q) == x);

    Element top = elem(r, q, b(1, 7));
    CHECK(top + top == elem(r, q, b(1, 7).scaled(2)));
    CHECK_FALSE((top + top).is_zero());
}

TEST_CASE("abelian multiplication and truncation") {
    auto r = lambda(1);
    Element x = elem(r, kPrec, c(3) + b(1));
    Element y = elem(r, kPrec, b(1));
    CHECK(x * y == elem(r, kPrec, b(1).scaled(3) + b(1, 2)));

    Precision a1{1, 8};
    CHECK(elem(r, a1, b(1).scaled(3)).is_zero());

    // degree N is dropped
    Element hi = elem(r, kPrec, b(1, 5));
    CHECK((hi * hi).is_zero());
}

TEST_CASE("mixed precisions meet") {
    auto r = lambda(2);
    Element x = elem(r, {4, 8}, b(1));
    Element y = elem(r, {2, 5}, b(2));
    Element s = x + y;
    CHECK(s.precision() == Precision{2, 5});
}

TEST_CASE("ring mismatch is rejected") {
    Element x = Element::generator(lambda(1), kPrec, 1);
    Element y = Element::generator(lambda(2), kPrec, 1);
    CHECK_THROWS_AS(x + y, Error);
    try {
        (void)(x * y);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ring_mismatch);
    }
}

TEST_CASE("v_M") {
    auto r = lambda(1);
    CHECK(elem(r, kPrec, c(3) + b(1, 2)).v_M().value == 1);
    CHECK(elem(r, kPrec, b(1).scaled(3) + b(1, 2)).v_M().value == 2);
    Valuation z = Element(r, kPrec).v_M();
    CHECK(z.value == kPlusInfinity);

    // candidate at min(a, N) is only a bound
    Precision a1{1, 8};
    Valuation v = elem(r, a1, b(1)).v_M();
    CHECK(v.value == 1);
    CHECK(v.is_bound);
    CHECK_FALSE(elem(r, kPrec, b(1)).v_M().is_bound);
}

TEST_CASE("symbol") {
    auto r = lambda(1);
    Poly x0 = Poly::monomial(Monomial::var(0));
    Poly x1 = Poly::monomial(Monomial::var(1));
    CHECK(elem(r, kPrec, c(3) + b(1, 2)).symbol() == x0);
    CHECK(elem(r, kPrec, b(1).scaled(3) + b(1, 2)).symbol() == x0 * x1 + x1 * x1);
    CHECK(elem(r, kPrec, b(1).scaled(6)).symbol() == (x0 * x1).scaled(2));

    Precision a1{1, 8};
    try {
        (void)elem(r, a1, b(1)).symbol();
        FAIL("expected a precision error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precision);
    }
}

TEST_CASE("involution on b1") {
    // (1+b)^{-1} - 1 = -b + b^2 - b^3 + ...
    auto r = lambda(1);
    Element x = Element::generator(r, kPrec, 1).involution();
    Poly expect;
    for (int k = 1; k < kPrec.N; ++k) expect = expect + b(1, k).scaled(k % 2 ? -1 : 1);
    CHECK(x == elem(r, kPrec, expect));
    CHECK(x.involution() == Element::generator(r, kPrec, 1));
}

TEST_CASE("heisenberg commutator against the binomial expansion") {
    // x2 x1 = x1 x2 x3^{-p^2}; expand (1+b1)(1+b2)(1+b3)^{-p^2} by hand.
    for (long p : {3L, 5L}) {
        auto h = RingContext::congruence_heisenberg(p, kH);
        Element one = Element::constant(h, kH, 1);
        Element x1 = one + Element::generator(h, kH, 1);
        Element x2 = one + Element::generator(h, kH, 2);
        std::vector<Element::TermT> terms;
        for (int a1 = 0; a1 <= 1; ++a1)
            for (int a2 = 0; a2 <= 1; ++a2)
                for (int k = 0; a1 + a2 + k < kH.N; ++k) {
                    mpz_class cf = binom(-p * p, k);
                    mpz_class md = ipow(p, kH.a);
                    mpz_class red = ((cf % md) + md) % md;
                    if (red == 0) continue;
                    Monomial m;
                    m.exp[0] = a1;
                    m.exp[1] = a2;
                    m.exp[2] = k;
                    m.deg = a1 + a2 + k;
                    terms.emplace_back(m, red.get_si());
                }
        CHECK(x2 * x1 == Element::from_terms(h, kH, terms));
    }
}

TEST_CASE("heisenberg corrections have valuation at least 3") {
    auto h = RingContext::congruence_heisenberg(3, kH);
    CHECK(h->r() == 3);
    CHECK(h->is_heisenberg());
    CHECK_FALSE(h->rules().empty());
    for (const auto& [key, f] : h->rules()) CHECK(exact_valuation(f, 3) >= 3);
    Element b1 = Element::generator(h, kH, 1), b2 = Element::generator(h, kH, 2);
    Element diff = b2 * b1 - b1 * b2;
    CHECK(diff.v_M().value >= 3);
}

TEST_CASE("validate_ring") {
    CHECK(validate_ring(lambda(2), kPrec, 10).valid);
    auto h = RingContext::congruence_heisenberg(3, kH);
    auto rep = validate_ring(h, kH, 20, 7);
    CHECK(rep.valid);
    CHECK(rep.checks > 27);

    std::map<std::pair<int, int>, Poly> bad{{{2, 1}, b(1) * b(2)}};
    try {
        (void)RingContext::with_rules(3, 2, bad, kPrec);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
    }
}

TEST_CASE("heisenberg matrix coordinates") {
    long p = 3;
    mpz_class mod = ipow(p, 8);
    auto g = heisenberg::multiply(heisenberg::generator(p, 2, false), heisenberg::generator(p, 1, false), mod);
    auto t = heisenberg::coordinates(g, p, mod);
    CHECK(t[0] == 1);
    CHECK(t[1] == 1);
    CHECK(t[2] == -p * p);
    auto inv = heisenberg::multiply(heisenberg::generator(p, 3, false), heisenberg::generator(p, 3, true), mod);
    CHECK(inv == heisenberg::identity());
}

TEST_CASE("property: v_M is supermultiplicative and symbols multiply") {
    std::mt19937_64 rng(11);
    for (auto ring : {lambda(2), RingContext::congruence_heisenberg(3, kH)}) {
        Precision q = ring->r() == 3 ? kH : kPrec;
        Domain fp = Domain::residue(3);
        int compared = 0;
        for (int t = 0; t < 200; ++t) {
            Element x = random_element(ring, q, rng), y = random_element(ring, q, rng);
            Valuation vx = x.v_M(), vy = y.v_M(), vxy = (x * y).v_M();
            if (x.is_zero() || y.is_zero() || vx.is_bound || vy.is_bound) continue;
            if (!vxy.is_bound) CHECK(vxy.value >= vx.value + vy.value);
            Poly prod = (x.symbol() * y.symbol()).normalized(fp);
            if (prod.is_zero() || vx.value + vy.value >= std::min(q.a, q.N)) continue;
            ++compared;
            CHECK(vxy.value == vx.value + vy.value);
            CHECK((x * y).symbol() == prod);
        }
        CHECK(compared > 20);
    }
}

TEST_CASE("property: rules product agrees with the commutative one to first order") {
    std::mt19937_64 rng(5);
    auto h = RingContext::congruence_heisenberg(3, kH);
    auto ab = RingContext::abelian(3, 3, kH);
    for (int t = 0; t < 200; ++t) {
        Element x = random_element(h, kH, rng), y = random_element(h, kH, rng);
        if (x.is_zero() || y.is_zero()) continue;
        Element xa = Element::from_poly(ab, kH, x.to_poly()), ya = Element::from_poly(ab, kH, y.to_poly());
        Element d = Element::from_poly(ab, kH, (x * y).to_poly()) - xa * ya;
        int need = x.v_M().value + y.v_M().value + 1;
        Valuation vd = d.v_M();
        CHECK((vd.value >= need || vd.is_bound));
    }
}

TEST_CASE("property: associativity and distributivity on random triples") {
    std::mt19937_64 rng(3);
    auto h = RingContext::congruence_heisenberg(5, kH);
    for (int t = 0; t < 50; ++t) {
        Element x = random_element(h, kH, rng), y = random_element(h, kH, rng), z = random_element(h, kH, rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("residue field algebra") {
    auto r = RingContext::residue_field_algebra(3, 2, kPrec);
    CHECK(r->d() == 2);
    CHECK(lambda(2)->d() == 3);
    Element x = Element::from_poly(r, kPrec, c(3) + b(1));
    CHECK(x == Element::generator(r, kPrec, 1));
}

TEST_CASE("bad primes") {
    CHECK(is_odd_prime(3));
    CHECK(is_odd_prime(101));
    CHECK_FALSE(is_odd_prime(2));
    CHECK_FALSE(is_odd_prime(9));
    CHECK_THROWS_AS(RingContext::abelian(4, 1), Error);
}
