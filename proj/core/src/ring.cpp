#include "iwalg/ring.hpp"

#include <map>
#include <sstream>

#include "iwalg/error.hpp"

namespace iwalg {

namespace {

constexpr int kRuleWeightCap = 40;
constexpr long kRewriteBudget = 2000000;

struct MonoDesc {
    bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_cmp(a, b) > 0; }
};

using Acc = std::map<Monomial, Element::Coeff, MonoDesc>;

int vp64(std::int64_t c, long p) {
    int v = 0;
    while (c % p == 0) {
        c /= p;
        ++v;
    }
    return v;
}

std::int64_t mod_of(const RingContext& ring, Precision prec) {
    if (ring.coefficients() == Coefficients::residue) return ring.p();
    mpz_class m = ipow(ring.p(), static_cast<unsigned>(prec.a));
    if (!m.fits_slong_p() || m > (mpz_class(1) << 62)) throw Error(ErrorKind::precision, "p^a exceeds the coefficient width");
    return m.get_si();
}

std::int64_t mulmod(std::int64_t x, std::int64_t y, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(x) * y) % m);
}

std::int64_t reduce_mpz(const mpz_class& c, std::int64_t m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), mpz_class(static_cast<long>(m)).get_mpz_t());
    return r.get_si();
}

/// Whether a term survives truncation at `prec`.
bool keep(const RingContext& ring, Precision prec, const Monomial& m, std::int64_t c) {
    if (ring.mode() == RingMode::rules) return static_cast<int>(m.deg) + vp64(c, ring.p()) < prec.N;
    return static_cast<int>(m.deg) < prec.N;
}

void acc_add(Acc& acc, const Monomial& m, std::int64_t c, std::int64_t mod) {
    if (c == 0) return;
    auto [it, inserted] = acc.emplace(m, c);
    if (!inserted) it->second = (it->second + c) % mod;
}

/// In rules mode the coefficient of b^α is only defined modulo p^{N-|α|}; it is
/// reduced there so that equal elements have equal terms.
std::vector<Element::TermT> collect(const Acc& acc, const RingContext& ring, Precision prec) {
    std::vector<Element::TermT> out;
    const bool rules = ring.mode() == RingMode::rules;
    for (auto [m, c] : acc) {
        if (rules) {
            int room = prec.N - static_cast<int>(m.deg);
            if (room <= 0) continue;
            if (room < prec.a) c %= ipow(ring.p(), static_cast<unsigned>(room)).get_si();
        }
        if (c != 0 && keep(ring, prec, m, c)) out.emplace_back(m, c);
    }
    return out;
}

/// Normal form of the word product b^α · b^β in rules mode.
void rules_product(const RingContext& ring, Precision prec, std::int64_t mod, const Monomial& x, const Monomial& y,
                   std::int64_t coeff, Acc& out) {
    using Word = std::vector<std::uint8_t>;
    struct Item {
        Word w;
        std::int64_t c;
    };
    auto to_word = [&](const Monomial& m, Word& w) {
        for (int i = 0; i < ring.r(); ++i)
            for (int k = 0; k < m.exp[i]; ++k) w.push_back(static_cast<std::uint8_t>(i));
    };
    std::vector<Item> stack;
    Item first{{}, coeff};
    to_word(x, first.w);
    to_word(y, first.w);
    stack.push_back(std::move(first));
    long steps = 0;
    const long p = ring.p();
    while (!stack.empty()) {
        if (++steps > kRewriteBudget) throw Error(ErrorKind::step_budget, "rewriting exceeded its step budget");
        Item it = std::move(stack.back());
        stack.pop_back();
        if (it.c == 0 || static_cast<int>(it.w.size()) + vp64(it.c, p) >= prec.N) continue;
        std::size_t k = 0;
        while (k + 1 < it.w.size() && it.w[k] <= it.w[k + 1]) ++k;
        if (k + 1 >= it.w.size()) {
            Monomial m;
            for (auto v : it.w) {
                ++m.exp[v];
                ++m.deg;
            }
            acc_add(out, m, it.c, mod);
            continue;
        }
        const int j = it.w[k] + 1, i = it.w[k + 1] + 1;
        auto rule = ring.rules().find({j, i});
        if (rule != ring.rules().end()) {
            for (const auto& [m, hc] : rule->second.terms()) {
                std::int64_t c = mulmod(it.c, reduce_mpz(hc, mod), mod);
                if (c == 0) continue;
                Item h{{}, c};
                h.w.assign(it.w.begin(), it.w.begin() + static_cast<long>(k));
                to_word(m, h.w);
                h.w.insert(h.w.end(), it.w.begin() + static_cast<long>(k) + 2, it.w.end());
                stack.push_back(std::move(h));
            }
        }
        std::swap(it.w[k], it.w[k + 1]);
        stack.push_back(std::move(it));
    }
}

void check_same(const Element& x, const Element& y) {
    if (x.ring() != y.ring() && !x.ring()->same_algebra(*y.ring()))
        throw Error(ErrorKind::ring_mismatch, "elements belong to different rings");
}

}  // namespace

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long q = 3; q * q <= p; q += 2)
        if (p % q == 0) return false;
    return true;
}

int exact_valuation(const Poly& f, long p) {
    Domain dom = Domain::padic(p);
    int best = kPlusInfinity;
    for (const auto& [m, c] : f.terms()) best = std::min(best, static_cast<int>(m.deg) + dom.valuation(c));
    return best;
}

Ring RingContext::abelian(long p, int r, Precision prec, int max_escalations) {
    if (!is_odd_prime(p)) throw Error(ErrorKind::validation, "p must be an odd prime");
    if (r < 1 || r > static_cast<int>(kMaxVars) - 1) throw Error(ErrorKind::validation, "vars must be between 1 and 7");
    if (prec.a < 1 || prec.N < 1) throw Error(ErrorKind::validation, "precision must be positive");
    std::shared_ptr<RingContext> ctx(new RingContext);
    ctx->p_ = p;
    ctx->r_ = r;
    ctx->prec_ = prec;
    ctx->max_escalations_ = max_escalations;
    return ctx;
}

Ring RingContext::residue_field_algebra(long p, int r, Precision prec, int max_escalations) {
    auto base = abelian(p, r, prec, max_escalations);
    std::shared_ptr<RingContext> ctx(new RingContext(*base));
    ctx->coeffs_ = Coefficients::residue;
    return ctx;
}

Ring RingContext::with_rules(long p, int r, std::map<std::pair<int, int>, Poly> rules, Precision prec,
                             int max_escalations) {
    auto base = abelian(p, r, prec, max_escalations);
    if (prec.N > kRuleWeightCap) throw Error(ErrorKind::precision, "degree bound too large for rules mode");
    std::shared_ptr<RingContext> ctx(new RingContext(*base));
    ctx->mode_ = RingMode::rules;
    for (auto& [key, h] : rules) {
        auto [j, i] = key;
        if (!(1 <= i && i < j && j <= r)) throw Error(ErrorKind::validation, "rule indices must satisfy 1 <= i < j <= vars");
        if (exact_valuation(h, p) < 3)
            throw Error(ErrorKind::validation,
                        "rule " + std::to_string(j) + " " + std::to_string(i) + " has M-adic valuation below 3");
        if (!h.is_zero()) ctx->rules_[key] = h;
    }
    return ctx;
}

namespace {

mpz_class binomial(const mpz_class& t, unsigned k) {
    mpz_class num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= t - i;
        den *= i + 1;
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

/// Exact series x_1^t1 x_2^t2 x_3^t3 with terms of M-weight below `cap`.
Poly heisenberg_series(long p, const std::array<mpz_class, 3>& t, int cap) {
    Domain dom = Domain::padic(p);
    std::vector<Poly::TermT> terms;
    for (int k1 = 0; k1 < cap; ++k1)
        for (int k2 = 0; k1 + k2 < cap; ++k2)
            for (int k3 = 0; k1 + k2 + k3 < cap; ++k3) {
                mpz_class c = binomial(t[0], k1) * binomial(t[1], k2) * binomial(t[2], k3);
                if (c == 0 || k1 + k2 + k3 + dom.valuation(c) >= cap) continue;
                Monomial m;
                m.exp[0] = static_cast<std::uint16_t>(k1);
                m.exp[1] = static_cast<std::uint16_t>(k2);
                m.exp[2] = static_cast<std::uint16_t>(k3);
                m.deg = static_cast<std::uint32_t>(k1 + k2 + k3);
                terms.emplace_back(m, c);
            }
    return Poly::from_terms(std::move(terms));
}

}  // namespace

Ring RingContext::congruence_heisenberg(long p, Precision prec, int max_escalations) {
    if (!is_odd_prime(p)) throw Error(ErrorKind::validation, "p must be an odd prime");
    // h_ji = x_j x_i − x_i x_j, both products re-expanded in ordered coordinates.
    std::map<std::pair<int, int>, Poly> rules;
    for (int j = 2; j <= 3; ++j)
        for (int i = 1; i < j; ++i) {
            auto ji = heisenberg::multiply(heisenberg::generator(p, j, false), heisenberg::generator(p, i, false), 0);
            auto ij = heisenberg::multiply(heisenberg::generator(p, i, false), heisenberg::generator(p, j, false), 0);
            Poly h = heisenberg_series(p, heisenberg::coordinates(ji, p, 0), kRuleWeightCap) -
                     heisenberg_series(p, heisenberg::coordinates(ij, p, 0), kRuleWeightCap);
            rules[{j, i}] = h;
        }
    auto base = with_rules(p, 3, std::move(rules), prec, max_escalations);
    std::shared_ptr<RingContext> ctx(new RingContext(*base));
    ctx->heisenberg_ = true;
    return ctx;
}

bool RingContext::same_algebra(const RingContext& o) const {
    return p_ == o.p_ && r_ == o.r_ && mode_ == o.mode_ && coeffs_ == o.coeffs_ && rules_ == o.rules_;
}

std::string RingContext::describe() const {
    std::ostringstream os;
    os << "ring p=" << p_ << " vars=" << r_ << " mode=" << (mode_ == RingMode::abelian ? "abelian" : "rules");
    if (heisenberg_) os << " preset=congruence-heisenberg";
    if (coeffs_ == Coefficients::residue) os << " (coefficients F_" << p_ << ")";
    return os.str();
}

Ring RingContext::with_precision(Precision prec, int max_escalations) const {
    std::shared_ptr<RingContext> ctx(new RingContext(*this));
    ctx->prec_ = prec;
    ctx->max_escalations_ = max_escalations;
    return ctx;
}

Ring RingContext::with_vars(int r) const {
    if (mode_ != RingMode::abelian) throw Error(ErrorKind::unsupported_mode, "variable extension needs an abelian ring");
    if (r < 1 || r > static_cast<int>(kMaxVars) - 1) throw Error(ErrorKind::validation, "vars must be between 1 and 7");
    std::shared_ptr<RingContext> ctx(new RingContext(*this));
    ctx->r_ = r;
    return ctx;
}

// ---------------------------------------------------------------------------

Element::Element(Ring ring, Precision prec) : ring_(std::move(ring)), prec_(prec) {
    if (!ring_) throw Error(ErrorKind::internal, "element without ring");
}

Element Element::from_terms(Ring ring, Precision prec, std::vector<TermT> terms) {
    Element e(std::move(ring), prec);
    const std::int64_t mod = mod_of(*e.ring_, prec);
    Acc acc;
    for (auto& [m, c] : terms) {
        std::int64_t r = ((c % mod) + mod) % mod;
        acc_add(acc, m, r, mod);
    }
    e.terms_ = collect(acc, *e.ring_, prec);
    return e;
}

Element Element::constant(Ring ring, Precision prec, long long c) {
    return from_terms(std::move(ring), prec, {{Monomial::one(), static_cast<Coeff>(c)}});
}

Element Element::generator(Ring ring, Precision prec, int i) {
    if (i < 1 || i > ring->r()) throw Error(ErrorKind::validation, "generator index out of range");
    return from_terms(std::move(ring), prec, {{Monomial::var(static_cast<std::size_t>(i - 1)), 1}});
}

Element Element::from_poly(Ring ring, Precision prec, const Poly& f) {
    Element e(std::move(ring), prec);
    const std::int64_t mod = mod_of(*e.ring_, prec);
    Acc acc;
    for (const auto& [m, c] : f.terms()) {
        for (int v = e.ring_->r(); v < static_cast<int>(kMaxVars); ++v)
            if (m.exp[v]) throw Error(ErrorKind::validation, "polynomial uses a variable outside the ring");
        acc_add(acc, m, reduce_mpz(c, mod), mod);
    }
    e.terms_ = collect(acc, *e.ring_, prec);
    return e;
}

Element Element::operator+(const Element& o) const {
    check_same(*this, o);
    Precision prec = prec_.meet(o.prec_);
    const std::int64_t mod = mod_of(*ring_, prec);
    Acc acc;
    for (const auto& [m, c] : terms_) acc_add(acc, m, c % mod, mod);
    for (const auto& [m, c] : o.terms_) acc_add(acc, m, c % mod, mod);
    Element e(ring_, prec);
    e.terms_ = collect(acc, *ring_, prec);
    return e;
}

Element Element::operator-() const {
    const std::int64_t mod = mod_of(*ring_, prec_);
    Acc acc;
    for (const auto& [m, c] : terms_) acc_add(acc, m, (mod - c) % mod, mod);
    Element e(ring_, prec_);
    e.terms_ = collect(acc, *ring_, prec_);
    return e;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator*(const Element& o) const {
    check_same(*this, o);
    Precision prec = prec_.meet(o.prec_);
    const std::int64_t mod = mod_of(*ring_, prec);
    Acc acc;
    const bool rules = ring_->mode() == RingMode::rules && !ring_->rules().empty();
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            std::int64_t c = mulmod(c1 % mod, c2 % mod, mod);
            if (c == 0) continue;
            if (rules) {
                rules_product(*ring_, prec, mod, m1, m2, c, acc);
            } else {
                Monomial m = m1 * m2;
                if (keep(*ring_, prec, m, c)) acc_add(acc, m, c, mod);
            }
        }
    Element e(ring_, prec);
    e.terms_ = collect(acc, *ring_, prec);
    return e;
}

bool Element::operator==(const Element& o) const {
    if (!ring_->same_algebra(*o.ring_)) return false;
    if (prec_ == o.prec_) return terms_ == o.terms_;
    Precision prec = prec_.meet(o.prec_);
    return truncated(prec).terms_ == o.truncated(prec).terms_;
}

Element Element::truncated(Precision prec) const {
    return from_terms(ring_, prec_.meet(prec), terms_);
}

Valuation Element::v_M() const {
    Valuation v;
    const long p = ring_->p();
    for (const auto& [m, c] : terms_) {
        int w = static_cast<int>(m.deg) + (ring_->coefficients() == Coefficients::residue ? 0 : vp64(c, p));
        v.value = std::min(v.value, w);
    }
    int limit = ring_->coefficients() == Coefficients::residue ? prec_.N : std::min(prec_.a, prec_.N);
    v.is_bound = v.value >= limit;
    return v;
}

GradedPoly Element::symbol() const {
    Valuation v = v_M();
    if (v.is_bound) throw Error(ErrorKind::precision, "leading form not determined at this precision");
    const long p = ring_->p();
    const bool residue = ring_->coefficients() == Coefficients::residue;
    std::vector<Poly::TermT> out;
    for (const auto& [m, c] : terms_) {
        int s = residue ? 0 : vp64(c, p);
        if (static_cast<int>(m.deg) + s != v.value) continue;
        std::int64_t u = c;
        for (int k = 0; k < s; ++k) u /= p;
        Monomial x;
        x.exp[0] = static_cast<std::uint16_t>(s);
        for (int i = 0; i < ring_->r(); ++i) x.exp[i + 1] = m.exp[i];
        x.deg = m.deg + static_cast<std::uint32_t>(s);
        out.emplace_back(x, mpz_class(static_cast<long>(u % p)));
    }
    return Poly::from_terms(std::move(out)).normalized(Domain::residue(p));
}

Element Element::involution() const {
    if (ring_->mode() != RingMode::abelian)
        throw Error(ErrorKind::unsupported_mode, "the involution is only expanded for abelian rings");
    // s_i = (1+b_i)^{-1} - 1 = Σ_{k≥1} (-1)^k b_i^k.
    std::vector<Element> series;
    for (int i = 1; i <= ring_->r(); ++i) {
        std::vector<TermT> t;
        for (int k = 1; k < prec_.N; ++k)
            t.emplace_back(Monomial::var(static_cast<std::size_t>(i - 1), static_cast<std::uint16_t>(k)), k % 2 ? -1 : 1);
        series.push_back(from_terms(ring_, prec_, std::move(t)));
    }
    Element result(ring_, prec_);
    for (const auto& [m, c] : terms_) {
        Element term = constant(ring_, prec_, c);
        for (int i = 0; i < ring_->r(); ++i)
            for (int k = 0; k < m.exp[i]; ++k) term = term * series[static_cast<std::size_t>(i)];
        result = result + term;
    }
    return result;
}

Poly Element::to_poly() const {
    std::vector<Poly::TermT> t;
    for (const auto& [m, c] : terms_) t.emplace_back(m, mpz_class(static_cast<long>(c)));
    return Poly::from_terms(std::move(t));
}

std::string Element::to_string() const { return to_poly().to_string(b_names(static_cast<std::size_t>(ring_->r())), ring_->p()); }

Element elem_add(const Element& x, const Element& y) { return x + y; }
Element elem_mul(const Element& x, const Element& y) { return x * y; }

Element random_element(const Ring& ring, Precision prec, std::mt19937_64& rng, int max_terms, int max_degree) {
    const long p = ring->p();
    const long cmax = p * p;
    std::vector<Element::TermT> t;
    int count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
    for (int k = 0; k < count; ++k) {
        Monomial m;
        int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
        for (int e = 0; e < deg; ++e) {
            std::size_t v = rng() % static_cast<std::uint64_t>(ring->r());
            ++m.exp[v];
            ++m.deg;
        }
        t.emplace_back(m, static_cast<Element::Coeff>(rng() % static_cast<std::uint64_t>(cmax + 1)));
    }
    return Element::from_terms(ring, prec, std::move(t));
}

ValidationReport validate_ring(const Ring& ring, Precision prec, int samples, std::uint64_t seed) {
    ValidationReport rep;
    if (ring->mode() == RingMode::abelian) {
        rep.checks = 1;
        return rep;
    }
    auto fail = [&](const std::string& what) {
        rep.valid = false;
        rep.failures.push_back(what);
    };
    for (const auto& [key, h] : ring->rules()) {
        ++rep.checks;
        int v = exact_valuation(h, ring->p());
        if (v < 3)
            fail("h_" + std::to_string(key.first) + std::to_string(key.second) + " has valuation " + std::to_string(v));
    }
    std::vector<Element> gens;
    for (int i = 1; i <= ring->r(); ++i) gens.push_back(Element::generator(ring, prec, i));
    for (const auto& x : gens)
        for (const auto& y : gens)
            for (const auto& z : gens) {
                ++rep.checks;
                if ((x * y) * z != x * (y * z))
                    fail("associativity fails on (" + x.to_string() + ", " + y.to_string() + ", " + z.to_string() + ")");
            }
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        Element x = random_element(ring, prec, rng), y = random_element(ring, prec, rng), z = random_element(ring, prec, rng);
        rep.checks += 3;
        std::string w = "(" + x.to_string() + ", " + y.to_string() + ", " + z.to_string() + ")";
        if ((x * y) * z != x * (y * z)) fail("associativity fails on " + w);
        if (x * (y + z) != x * y + x * z) fail("left distributivity fails on " + w);
        if ((x + y) * z != x * z + y * z) fail("right distributivity fails on " + w);
    }
    return rep;
}

namespace heisenberg {

Mat3 identity() {
    Mat3 m;
    for (auto& e : m) e = 0;
    m[0] = m[4] = m[8] = 1;
    return m;
}

Mat3 generator(long p, int i, bool inverse) {
    Mat3 m = identity();
    mpz_class v = ipow(p, 2);
    if (inverse) v = -v;
    switch (i) {
        case 1: m[1] = v; break;
        case 2: m[5] = v; break;
        case 3: m[2] = v; break;
        default: throw Error(ErrorKind::validation, "Heisenberg generator index must be 1, 2 or 3");
    }
    return m;
}

Mat3 multiply(const Mat3& x, const Mat3& y, const mpz_class& modulus) {
    Mat3 z;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            mpz_class s = 0;
            for (int k = 0; k < 3; ++k) s += x[i * 3 + k] * y[k * 3 + j];
            if (modulus != 0) mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), modulus.get_mpz_t());
            z[i * 3 + j] = s;
        }
    return z;
}

std::array<mpz_class, 3> coordinates(const Mat3& g, long p, const mpz_class& modulus) {
    const mpz_class p2 = ipow(p, 2), p4 = ipow(p, 4);
    auto exact_div = [](mpz_class a, const mpz_class& b) {
        if (a % b != 0) throw Error(ErrorKind::internal, "matrix is not in the congruence subgroup");
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    };
    mpz_class t1 = exact_div(g[1], p2), t2 = exact_div(g[5], p2);
    mpz_class r = g[2] - t1 * t2 * p4;
    if (modulus != 0) mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    mpz_class t3 = exact_div(r, p2);
    std::array<mpz_class, 3> t{t1, t2, t3};
    if (modulus != 0) {
        mpz_class m;
        mpz_divexact(m.get_mpz_t(), modulus.get_mpz_t(), p2.get_mpz_t());
        for (auto& x : t) {
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
            if (2 * x > m) x -= m;
        }
    }
    return t;
}

Element expand(const Ring& ring, Precision prec, const std::array<mpz_class, 3>& t) {
    if (ring->r() != 3) throw Error(ErrorKind::validation, "Heisenberg coordinates need three variables");
    return Element::from_poly(ring, prec, heisenberg_series(ring->p(), t, prec.N));
}

}  // namespace heisenberg

}  // namespace iwalg
