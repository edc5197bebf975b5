#include "iwalg/homology.hpp"

#include <algorithm>

#include "iwalg/error.hpp"

namespace iwalg {

namespace {

bool zero_row(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const Poly& f) { return f.is_zero(); });
}

Matrix first_columns(const Matrix& rows, std::size_t k) {
    Matrix out;
    for (const auto& z : rows) {
        Row r(z.begin(), z.begin() + static_cast<long>(k));
        if (!zero_row(r)) out.push_back(std::move(r));
    }
    return out;
}

/// Generators of {x : x·T ∈ span(extra)}, T given by rows of length ncols.
Matrix preimage(const Matrix& t, const Matrix& extra, std::size_t nrows, std::size_t ncols, const Domain& dom) {
    if (nrows == 0) return {};
    if (ncols == 0 || (local::is_zero_matrix(t))) return local::identity(nrows);
    Matrix stacked = t;
    stacked.insert(stacked.end(), extra.begin(), extra.end());
    return first_columns(local::syz(stacked, ncols, dom), nrows);
}

}  // namespace

Resolution minimal_free_resolution(const Presentation& m, int length) {
    require_commutative(m.ring, "free resolution");
    const Domain dom = m.domain();
    Resolution res;
    res.target = simplify(m);
    res.ranks.push_back(res.target.rank);
    if (res.target.rank == 0 || res.target.rels.empty()) {
        res.complete = true;
        return res;
    }
    const std::size_t limit = length < 0 ? static_cast<std::size_t>(m.ring->d()) + 1 : static_cast<std::size_t>(length);
    Matrix cur = res.target.rels;
    std::size_t prev = res.target.rank;
    Matrix pending;
    bool have_pending = false;
    while (res.maps.size() < limit) {
        res.maps.push_back(cur);
        res.ranks.push_back(cur.size());
        Matrix k = have_pending ? pending : local::syz(cur, prev, dom);
        have_pending = false;
        prev = cur.size();
        if (k.empty()) {
            res.complete = true;
            break;
        }
        if (res.maps.size() >= limit) break;
        Matrix z = local::syz(k, prev, dom);
        auto ess = local::essential_rows(k, z, dom);
        if (ess.size() == k.size()) {
            cur = std::move(k);
            pending = std::move(z);
            have_pending = true;
        } else {
            cur.clear();
            for (auto i : ess) cur.push_back(k[i]);
        }
    }
    if (length < 0 && !res.complete)
        throw Error(ErrorKind::internal, "resolution exceeds the global dimension bound");
    return res;
}

namespace {

std::size_t rank_at(const Resolution& res, int i) {
    if (i < 0) return 0;
    if (static_cast<std::size_t>(i) < res.ranks.size()) return res.ranks[static_cast<std::size_t>(i)];
    if (!res.complete) throw Error(ErrorKind::internal, "resolution too short for the requested degree");
    return 0;
}

}  // namespace

ExtResult ext(const Resolution& res, int i) {
    const Presentation& m = res.target;
    const Domain dom = m.domain();
    ExtResult out{i, Presentation::free(m.ring, m.prec, 0), {}};
    if (i < 0) return out;
    const std::size_t di = rank_at(res, i);
    if (di == 0) return out;
    const std::size_t di1 = rank_at(res, i + 1);
    if (di1 == 0) {
        out.cocycles = local::identity(di);
    } else {
        Matrix t = local::transpose(res.map(static_cast<std::size_t>(i) + 1), di);
        out.cocycles = preimage(t, {}, di, di1, dom);
    }
    Matrix image;
    if (i >= 1) image = local::transpose(res.map(static_cast<std::size_t>(i)), rank_at(res, i - 1));
    out.module = simplify(subquotient(m.ring, m.prec, out.cocycles, image, di));
    return out;
}

ExtResult ext(const Presentation& m, int i) {
    auto res = minimal_free_resolution(m, i + 1);
    return ext(res, i);
}

std::size_t tor_k(const Resolution& res, int i) { return rank_at(res, i); }
std::size_t ext_k(const Resolution& res, int i) { return rank_at(res, i); }

Presentation transpose(const Presentation& m) {
    require_commutative(m.ring, "transpose");
    Presentation s = simplify(m);
    if (s.rels.empty()) return Presentation::free(m.ring, m.prec, 0);
    return simplify(Presentation::make(m.ring, m.prec, s.rels.size(), local::transpose(s.rels, s.rank)));
}

Presentation loop(const Presentation& m) {
    require_commutative(m.ring, "loop");
    Presentation s = simplify(m);
    if (s.rels.empty()) return Presentation::free(m.ring, m.prec, 0);
    return simplify(Presentation::make(m.ring, m.prec, s.rels.size(), local::syz(s.rels, s.rank, m.domain())));
}

namespace {

/// Generators of M^+ inside F_0^+ for a simplified M.
Matrix dual_generators(const Presentation& s) {
    if (s.rels.empty()) return local::identity(s.rank);
    return preimage(local::transpose(s.rels, s.rank), {}, s.rank, s.rels.size(), s.domain());
}

}  // namespace

Presentation dual(const Presentation& m) {
    require_commutative(m.ring, "dual");
    Presentation s = simplify(m);
    return simplify(subquotient(m.ring, m.prec, dual_generators(s), {}, s.rank));
}

BidualData bidual_map(const Presentation& m) {
    require_commutative(m.ring, "bidual map");
    const Domain dom = m.domain();
    BidualData out{simplify(m), {}, {}, {}, {}};
    const Presentation& s = out.module;
    const std::size_t n = s.rank;
    Matrix k = dual_generators(s);
    const std::size_t kk = k.size();
    Matrix z = kk ? local::syz(k, n, dom) : Matrix{};
    out.dual = Presentation::make(m.ring, m.prec, kk, z);
    Matrix w = z.empty() ? local::identity(kk) : preimage(local::transpose(z, kk), {}, kk, z.size(), dom);
    out.bidual = simplify(subquotient(m.ring, m.prec, w, {}, kk));
    if (kk == 0) {
        out.kernel = s;
        out.cokernel = Presentation::free(m.ring, m.prec, 0);
        return out;
    }
    Matrix kt = local::transpose(k, n);  // image of e_a is row a
    out.kernel = simplify(subquotient(m.ring, m.prec, preimage(kt, {}, n, kk, dom), s.rels, n));
    out.cokernel = simplify(subquotient(m.ring, m.prec, w, kt, kk));
    return out;
}

CanonicalSequence canonical_sequence(const Presentation& m) {
    CanonicalSequence out{bidual_map(m), {}, {}};
    Presentation d = transpose(m);
    out.e1d = ext(d, 1).module;
    out.e2d = ext(d, 2).module;
    return out;
}

NaturalMapData double_dual_map(const Presentation& m, int c) {
    require_commutative(m.ring, "natural map");
    if (c < 1) throw Error(ErrorKind::validation, "natural map needs c >= 1");
    const Domain dom = m.domain();
    Resolution res = minimal_free_resolution(m, c + 1);
    const Presentation& s = res.target;
    const Ring& ring = s.ring;
    NaturalMapData out{s, Presentation::free(ring, s.prec, 0), s, Presentation::free(ring, s.prec, 0)};
    const std::size_t n0 = s.rank;
    auto d = [&](int k) { return rank_at(res, k); };
    auto phi = [&](int k) -> Matrix {
        if (k < 1 || static_cast<std::size_t>(k) > res.maps.size()) return {};
        return res.map(static_cast<std::size_t>(k));
    };
    const std::size_t dc = d(c);
    if (dc == 0) return out;
    Matrix kc = d(c + 1) ? preimage(local::transpose(phi(c + 1), dc), {}, dc, d(c + 1), dom) : local::identity(dc);
    if (kc.empty()) return out;
    Matrix imc = local::transpose(phi(c), d(c - 1));

    // Resolution G of E = E^c(M) on the generators kc.
    std::vector<Matrix> psi(static_cast<std::size_t>(c) + 2);
    std::vector<std::size_t> g(static_cast<std::size_t>(c) + 2, 0);
    g[0] = kc.size();
    {
        Matrix stacked = kc;
        stacked.insert(stacked.end(), imc.begin(), imc.end());
        psi[1] = local::minimalize(first_columns(local::syz(stacked, dc, dom), g[0]), g[0], dom);
        g[1] = psi[1].size();
    }
    for (int k = 2; k <= c + 1; ++k) {
        auto ku = static_cast<std::size_t>(k);
        if (g[ku - 1] == 0) break;
        psi[ku] = local::minimalize(local::syz(psi[ku - 1], g[ku - 2], dom), g[ku - 1], dom);
        g[ku] = psi[ku].size();
    }

    // Chain map G_k → H_k = F_{c-k}^+ lifting E ⊂ coker(φ_c^+); row m of
    // alpha is alpha_rows[m] / den[m] with den[m] a unit.
    Matrix alpha = kc;
    std::vector<Poly> den(kc.size(), Poly::constant(1));
    for (int k = 1; k <= c; ++k) {
        auto ku = static_cast<std::size_t>(k);
        const std::size_t hk = d(c - k), hk1 = d(c - k + 1);
        Matrix theta = local::transpose(phi(c - k + 1), hk);
        Matrix next;
        std::vector<Poly> next_den;
        for (const auto& row : psi[ku]) {
            std::vector<std::size_t> used;
            for (std::size_t t = 0; t < row.size(); ++t)
                if (!row[t].is_zero()) used.push_back(t);
            Poly common = Poly::constant(1);
            for (auto t : used) common = common * den[t];
            Row y(hk1);
            for (auto t : used) {
                Poly others = Poly::constant(1);
                for (auto q : used)
                    if (q != t) others = others * den[q];
                Poly f = (row[t] * others).normalized(dom);
                for (std::size_t j = 0; j < hk1; ++j)
                    if (!alpha[t][j].is_zero()) y[j] = y[j] + f * alpha[t][j];
            }
            for (auto& e : y) e = e.normalized(dom);
            auto lifted = local::lift(theta, y, hk1, dom);
            if (!lifted) throw Error(ErrorKind::validation, "natural map requires E^i(M) = 0 below the given degree");
            next.push_back(lifted->second);
            next_den.push_back((lifted->first * common).normalized(dom));
        }
        alpha = std::move(next);
        den = std::move(next_den);
    }

    const std::size_t gc = g[static_cast<std::size_t>(c)];
    if (gc == 0) return out;
    // Dualized level c: e_a ↦ (alpha[m][a] / den[m])_m, scaled by Π den.
    Matrix v(n0, Row(gc));
    for (std::size_t mi = 0; mi < gc; ++mi) {
        Poly others = Poly::constant(1);
        for (std::size_t q = 0; q < gc; ++q)
            if (q != mi) others = others * den[q];
        for (std::size_t a = 0; a < n0; ++a) v[a][mi] = (alpha[mi][a] * others).normalized(dom);
    }
    const std::size_t gc1 = g[static_cast<std::size_t>(c) + 1];
    Matrix ke = gc1 ? preimage(local::transpose(psi[static_cast<std::size_t>(c) + 1], gc), {}, gc, gc1, dom)
                    : local::identity(gc);
    Matrix ime = local::transpose(psi[static_cast<std::size_t>(c)], g[static_cast<std::size_t>(c) - 1]);
    out.target = simplify(subquotient(ring, s.prec, ke, ime, gc));
    out.kernel = simplify(subquotient(ring, s.prec, preimage(v, ime, n0, gc, dom), s.rels, n0));
    Matrix cok = ime;
    cok.insert(cok.end(), v.begin(), v.end());
    out.cokernel = simplify(subquotient(ring, s.prec, ke, cok, gc));
    return out;
}

namespace {

std::vector<Poly> koszul_sequence(const Ring& ring) {
    std::vector<Poly> x;
    if (ring->coefficients() == Coefficients::padic) x.push_back(Poly::constant(ring->p()));
    for (int i = 0; i < ring->r(); ++i) x.push_back(Poly::monomial(Monomial::var(static_cast<std::size_t>(i))));
    return x;
}

std::vector<unsigned> subsets(std::size_t l, int size) {
    std::vector<unsigned> out;
    if (size < 0 || static_cast<std::size_t>(size) > l) return out;
    for (unsigned mask = 0; mask < (1u << l); ++mask)
        if (__builtin_popcount(mask) == size) out.push_back(mask);
    return out;
}

std::size_t index_of(const std::vector<unsigned>& v, unsigned mask) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), mask) - v.begin());
}

int sign_below(unsigned mask, std::size_t t) {
    return __builtin_popcount(mask & ((1u << t) - 1)) % 2 ? -1 : 1;
}

/// Relations of M in every block of M^{⊕ blocks}.
Matrix block_relations(const Presentation& m, std::size_t blocks) {
    Matrix out;
    const std::size_t n = m.rank;
    for (std::size_t b = 0; b < blocks; ++b)
        for (const auto& r : m.rels) {
            Row row(n * blocks);
            for (std::size_t a = 0; a < n; ++a) row[b * n + a] = r[a];
            out.push_back(std::move(row));
        }
    return out;
}

/// Koszul boundary ∂_i ⊗ F: rows indexed by (S, a), |S| = i.
Matrix koszul_boundary(const std::vector<Poly>& x, std::size_t n, int i, const Domain& dom) {
    auto src = subsets(x.size(), i), dst = subsets(x.size(), i - 1);
    Matrix out;
    for (unsigned s : src)
        for (std::size_t a = 0; a < n; ++a) {
            Row row(dst.size() * n);
            for (std::size_t t = 0; t < x.size(); ++t) {
                if (!(s & (1u << t))) continue;
                Poly e = sign_below(s, t) < 0 ? -x[t] : x[t];
                row[index_of(dst, s & ~(1u << t)) * n + a] = e.normalized(dom);
            }
            out.push_back(std::move(row));
        }
    return out;
}

/// Koszul coboundary δ^i on Hom(K_i, F): rows indexed by (S, a), |S| = i.
Matrix koszul_coboundary(const std::vector<Poly>& x, std::size_t n, int i, const Domain& dom) {
    auto src = subsets(x.size(), i), dst = subsets(x.size(), i + 1);
    Matrix out;
    for (unsigned s : src)
        for (std::size_t a = 0; a < n; ++a) {
            Row row(dst.size() * n);
            for (std::size_t t = 0; t < x.size(); ++t) {
                if (s & (1u << t)) continue;
                Poly e = sign_below(s, t) < 0 ? -x[t] : x[t];
                row[index_of(dst, s | (1u << t)) * n + a] = e.normalized(dom);
            }
            out.push_back(std::move(row));
        }
    return out;
}

}  // namespace

std::size_t koszul_tor(const Presentation& module, int i) {
    require_commutative(module.ring, "Koszul homology");
    const Presentation m = simplify(module);
    const Domain dom = m.domain();
    auto x = koszul_sequence(m.ring);
    const std::size_t l = x.size(), n = m.rank;
    if (i < 0 || static_cast<std::size_t>(i) > l || n == 0) return 0;
    const std::size_t ci = subsets(l, i).size() * n;
    Matrix ker;
    if (i == 0) {
        ker = local::identity(ci);
    } else {
        const std::size_t cprev = subsets(l, i - 1).size();
        ker = preimage(koszul_boundary(x, n, i, dom), block_relations(m, cprev), ci, cprev * n, dom);
    }
    Matrix im = block_relations(m, ci / n);
    if (static_cast<std::size_t>(i) + 1 <= l) {
        Matrix b = koszul_boundary(x, n, i + 1, dom);
        im.insert(im.end(), b.begin(), b.end());
    }
    return min_generators(subquotient(m.ring, m.prec, ker, im, ci));
}

std::size_t koszul_ext_from_k(const Presentation& module, int i) {
    require_commutative(module.ring, "Koszul cohomology");
    const Presentation m = simplify(module);
    const Domain dom = m.domain();
    auto x = koszul_sequence(m.ring);
    const std::size_t l = x.size(), n = m.rank;
    if (i < 0 || static_cast<std::size_t>(i) > l || n == 0) return 0;
    const std::size_t ci = subsets(l, i).size() * n;
    Matrix ker;
    if (static_cast<std::size_t>(i) == l) {
        ker = local::identity(ci);
    } else {
        const std::size_t cnext = subsets(l, i + 1).size();
        ker = preimage(koszul_coboundary(x, n, i, dom), block_relations(m, cnext), ci, cnext * n, dom);
    }
    Matrix im = block_relations(m, ci / n);
    if (i >= 1) {
        Matrix b = koszul_coboundary(x, n, i - 1, dom);
        im.insert(im.end(), b.begin(), b.end());
    }
    return min_generators(subquotient(m.ring, m.prec, ker, im, ci));
}

Presentation residue_field(const Ring& ring, Precision prec) {
    Matrix rels;
    for (const auto& x : koszul_sequence(ring)) rels.push_back(Row{x});
    return Presentation::make(ring, prec, 1, std::move(rels), "k");
}

}  // namespace iwalg
