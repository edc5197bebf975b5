#include "iwalg/groebner.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <tuple>

#include "iwalg/error.hpp"

namespace iwalg {

namespace {

// Coefficient growth beyond this (numerator plus denominator bits) is treated as
// a failed computation rather than waited out.
constexpr std::size_t kMaxCoeffBits = 4096;

// Internally coefficients live in Z_(p) (or F_p) as reduced fractions whose
// denominators are prime to p. Every basis element is scaled so that its lead
// coefficient is exactly p^v (or 1 over F_p); results are mapped back to
// integer vectors by clearing denominators, which are p-units.

struct QTerm {
    std::uint32_t comp;
    Monomial mono;
    mpq_class c;
};
using QVec = std::vector<QTerm>;

struct Lead {
    std::uint32_t comp;
    Monomial mono;
    int val;
};

class Arith {
public:
    explicit Arith(const Domain& dom) : dom_(dom) {}

    bool field() const { return dom_.is_field(); }

    void normalize(mpq_class& c) const {
        if (!field()) return;
        mpz_class n = c.get_num();
        mpz_class d = c.get_den();
        dom_.normalize(n);
        if (d != 1) n *= dom_.inverse_mod_p(d);
        dom_.normalize(n);
        c = n;
    }
    int valuation(const mpq_class& c) const { return dom_.valuation(c.get_num()); }
    mpq_class ppow(int e) const { return mpq_class(ipow(dom_.p(), static_cast<unsigned>(e))); }

    /// Scale v so its lead coefficient is p^v (1 over F_p).
    void make_monic(QVec& v) const {
        if (v.empty()) return;
        mpq_class u;
        if (field()) {
            u = mpq_class(dom_.inverse_mod_p(v.front().c.get_num()));
        } else {
            u = mpq_class(v.front().c.get_den(), dom_.unit_part(v.front().c.get_num()));
            u.canonicalize();
        }
        if (u == 1) return;
        for (auto& t : v) {
            t.c *= u;
            normalize(t.c);
        }
    }

    /// f - a * m * g.
    void sub_mul(QVec& f, const mpq_class& a, const Monomial& m, const QVec& g) const {
        QVec out;
        out.reserve(f.size() + g.size());
        std::size_t i = 0, j = 0;
        while (i < f.size() || j < g.size()) {
            int c;
            Monomial gm;
            if (j < g.size()) gm = g[j].mono * m;
            if (i == f.size())
                c = -1;
            else if (j == g.size())
                c = 1;
            else
                c = term_cmp(f[i].comp, f[i].mono, g[j].comp, gm);
            if (c > 0) {
                out.push_back(std::move(f[i]));
                ++i;
            } else {
                mpq_class t = -(a * g[j].c);
                if (c == 0) {
                    t += f[i].c;
                    ++i;
                }
                normalize(t);
                if (t != 0) out.push_back(QTerm{g[j].comp, std::move(gm), std::move(t)});
                ++j;
            }
        }
        f = std::move(out);
    }

private:
    const Domain& dom_;
};

Lead lead_of(const QVec& v, const Arith& ar) { return Lead{v.front().comp, v.front().mono, ar.valuation(v.front().c)}; }

QVec to_q(const Vec& v, const Arith& ar) {
    QVec out;
    out.reserve(v.size());
    for (const auto& t : v) {
        mpq_class c(t.coeff);
        ar.normalize(c);
        if (c != 0) out.push_back(QTerm{t.comp, t.mono, std::move(c)});
    }
    return out;
}

Vec from_q(const QVec& v, const Domain& dom) {
    mpz_class l = 1;
    for (const auto& t : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    Vec out;
    out.reserve(v.size());
    for (const auto& t : v) {
        mpz_class n = t.c.get_num() * (l / t.c.get_den());
        out.push_back(Term{t.comp, t.mono, std::move(n)});
    }
    vec_make_primitive(out, dom);
    return out;
}

int find_reducer(const QTerm& t, const std::vector<Lead>& leads, const Arith& ar, std::size_t skip = SIZE_MAX) {
    int v = -1;
    for (std::size_t k = 0; k < leads.size(); ++k) {
        if (k == skip) continue;
        const Lead& l = leads[k];
        if (l.comp != t.comp || !l.mono.divides(t.mono)) continue;
        if (!ar.field()) {
            if (v < 0) v = ar.valuation(t.c);
            if (l.val > v) continue;
        }
        return static_cast<int>(k);
    }
    return -1;
}

/// Basis elements have lead p^val, so the quotient c / p^val lies in Z_(p).
void reduce_term(QVec& f, std::size_t i, const QVec& g, const Lead& lg, const Arith& ar) {
    mpq_class a = f[i].c;
    if (!ar.field() && lg.val > 0) a /= ar.ppow(lg.val);
    Monomial m = f[i].mono / lg.mono;
    ar.sub_mul(f, a, m, g);
}

void check_size(const QVec& f) {
    for (const auto& t : f)
        if (mpz_sizeinbase(t.c.get_num_mpz_t(), 2) + mpz_sizeinbase(t.c.get_den_mpz_t(), 2) > kMaxCoeffBits)
            throw Error(ErrorKind::step_budget, "Gröbner basis coefficients exceeded their size budget");
}

QVec reduce(QVec f, const std::vector<QVec>& basis, const std::vector<Lead>& leads, const Arith& ar, bool full) {
    std::size_t i = 0;
    std::size_t steps = 0;
    while (i < f.size()) {
        if (++steps % 32 == 0) check_size(f);
        int k = find_reducer(f[i], leads, ar);
        if (k < 0) {
            if (!full) break;
            ++i;
            continue;
        }
        reduce_term(f, i, basis[static_cast<std::size_t>(k)], leads[static_cast<std::size_t>(k)], ar);
    }
    ar.make_monic(f);
    return f;
}

// lc(f) = p^s, lc(g) = p^t, e = max(s,t): p^{e-s} mf f - p^{e-t} mg g.
QVec s_vector(const QVec& f, const Lead& lf, const QVec& g, const Lead& lg, const Arith& ar) {
    Monomial l = lf.mono.lcm(lg.mono);
    Monomial mf = l / lf.mono, mg = l / lg.mono;
    int e = std::max(lf.val, lg.val);
    mpq_class fs = ar.field() ? mpq_class(1) : ar.ppow(e - lf.val);
    mpq_class gs = ar.field() ? mpq_class(1) : ar.ppow(e - lg.val);
    QVec a;
    a.reserve(f.size());
    for (const auto& t : f) a.push_back(QTerm{t.comp, t.mono * mf, t.c * fs});
    ar.sub_mul(a, gs, mg, g);
    return a;
}

std::vector<Lead> leads_of(const std::vector<QVec>& basis, const Arith& ar) {
    std::vector<Lead> leads;
    leads.reserve(basis.size());
    for (const auto& g : basis) leads.push_back(lead_of(g, ar));
    return leads;
}

std::vector<QVec> to_q_basis(const std::vector<Vec>& basis, const Arith& ar) {
    std::vector<QVec> out;
    out.reserve(basis.size());
    for (const auto& g : basis) {
        QVec q = to_q(g, ar);
        ar.make_monic(q);
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace

Vec normal_form(Vec f, const std::vector<Vec>& basis, const Domain& dom) {
    Arith ar(dom);
    auto qb = to_q_basis(basis, ar);
    auto leads = leads_of(qb, ar);
    return from_q(reduce(to_q(f, ar), qb, leads, ar, true), dom);
}

bool reduces_to_zero(const Vec& f, const std::vector<Vec>& basis, const Domain& dom) {
    Arith ar(dom);
    auto qb = to_q_basis(basis, ar);
    auto leads = leads_of(qb, ar);
    return reduce(to_q(f, ar), qb, leads, ar, false).empty();
}

std::vector<Vec> groebner_basis(const std::vector<Vec>& gens, const Domain& dom, bool reduce_tails) {
    Arith ar(dom);
    std::vector<QVec> basis;
    std::vector<Lead> leads;
    // (lcm degree, j, i) with i < j: normal strategy, deterministic order.
    std::set<std::tuple<std::uint32_t, std::size_t, std::size_t>> pairs;

    auto add = [&](QVec h) {
        check_size(h);
        Lead lh = lead_of(h, ar);
        std::size_t j = basis.size();
        for (std::size_t i = 0; i < j; ++i) {
            if (leads[i].comp != lh.comp) continue;
            pairs.emplace(leads[i].mono.lcm(lh.mono).deg, j, i);
        }
        basis.push_back(std::move(h));
        leads.push_back(lh);
    };

    for (const auto& g : gens) {
        QVec h = to_q(g, ar);
        if (h.empty()) continue;
        h = reduce(std::move(h), basis, leads, ar, false);
        if (!h.empty()) add(std::move(h));
    }

    std::size_t budget = 200000;
    while (!pairs.empty()) {
        if (budget-- == 0) throw Error(ErrorKind::step_budget, "Gröbner basis computation exceeded its pair budget");
        auto [deg, j, i] = *pairs.begin();
        pairs.erase(pairs.begin());
        (void)deg;
        QVec s = s_vector(basis[i], leads[i], basis[j], leads[j], ar);
        s = reduce(std::move(s), basis, leads, ar, false);
        if (!s.empty()) add(std::move(s));
    }

    // Drop elements whose lead is strongly divisible by another lead.
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t k = 0; k < basis.size() && keep[i]; ++k) {
            if (k == i || !keep[k]) continue;
            const Lead &a = leads[k], &b = leads[i];
            if (a.comp != b.comp || !a.mono.divides(b.mono) || a.val > b.val) continue;
            bool same = a.mono == b.mono && a.val == b.val;
            if (!same || k < i) keep[i] = false;
        }
    }
    std::vector<QVec> kept;
    std::vector<Lead> kept_leads;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) {
            kept.push_back(std::move(basis[i]));
            kept_leads.push_back(leads[i]);
        }
    if (reduce_tails) {
        for (std::size_t i = 0; i < kept.size(); ++i) {
            QVec full = kept[i];
            std::size_t pos = 1;
            int steps = 0;
            while (pos < full.size()) {
                int k = find_reducer(full[pos], kept_leads, ar, i);
                if (k < 0) {
                    ++pos;
                    continue;
                }
                reduce_term(full, pos, kept[static_cast<std::size_t>(k)], kept_leads[static_cast<std::size_t>(k)], ar);
                if (++steps > 100000) throw Error(ErrorKind::step_budget, "tail reduction budget exceeded");
            }
            kept[i] = std::move(full);
        }
    }
    std::vector<Vec> out;
    out.reserve(kept.size());
    for (const auto& q : kept) out.push_back(from_q(q, dom));
    return out;
}

std::vector<Vec> syzygies(const std::vector<Vec>& gens, std::uint32_t rank, const Domain& dom) {
    std::vector<Vec> aug;
    aug.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Vec v = gens[i];
        v.push_back(Term{static_cast<std::uint32_t>(rank + i), Monomial::one(), 1});
        aug.push_back(std::move(v));
    }
    std::vector<Vec> gb = groebner_basis(aug, dom, false);
    std::vector<Vec> syz;
    for (auto& g : gb) {
        if (g.front().comp < rank) continue;
        for (auto& t : g) t.comp -= rank;
        syz.push_back(std::move(g));
    }
    return syz;
}

std::size_t lead_component_count(const std::vector<Vec>& basis) {
    std::set<std::uint32_t> comps;
    for (const auto& g : basis)
        if (!g.empty()) comps.insert(g.front().comp);
    return comps.size();
}

}  // namespace iwalg
