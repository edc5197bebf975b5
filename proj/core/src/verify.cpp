#include "iwalg/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "iwalg/error.hpp"

namespace iwalg {

namespace {

std::string row_str(const Row& row, const Ring& ring) {
    std::string s = "(";
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (k) s += ", ";
        s += row[k].to_string(b_names(static_cast<std::size_t>(ring->r())), ring->p());
    }
    return s + ")";
}

Poly random_poly(std::mt19937_64& rng, int r, long cmax, int max_degree, int max_terms) {
    std::vector<Poly::TermT> t;
    int count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
    for (int k = 0; k < count; ++k) {
        Monomial m;
        int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
        for (int e = 0; e < deg; ++e) {
            std::size_t v = rng() % static_cast<std::uint64_t>(r);
            ++m.exp[v];
            ++m.deg;
        }
        t.emplace_back(m, mpz_class(static_cast<long>(rng() % static_cast<std::uint64_t>(cmax + 1))));
    }
    return Poly::from_terms(std::move(t));
}

// Finite length via the gr staircase, escalating until the staircase closes.
std::optional<std::size_t> finite_length(const Presentation& m, int max_escalations) {
    Precision q = m.prec;
    for (int k = 0; k <= max_escalations; ++k, q = q.escalated())
        if (auto len = gr_length(m, q)) return len;
    return std::nullopt;
}

bool pseudo_null_both_routes(const Presentation& m, AuditReport& rep, std::string& trace) {
    if (is_zero(m)) return true;
    const int d = m.ring->d();
    Certified<int> dl = delta(m);
    if (dl.status == Certification::heuristic) ++rep.heuristic;
    int j = grade_via_ext(m);
    trace += " delta=" + std::to_string(dl.value) + " j_ext=" + std::to_string(j);
    return dl.value <= d - 2 && j >= 2 && dl.value + j == d;
}

}  // namespace

void AuditReport::record(bool pass, const Presentation* m, std::uint64_t seed, const std::string& trace) {
    ++instances;
    if (pass) {
        ++passed;
        return;
    }
    ++failed;
    if (!witness) {
        Witness w;
        if (m) {
            w.ring = m->ring->describe();
            w.module = m->to_string();
            w.prec = m->prec;
        }
        w.seed = seed;
        w.trace = trace;
        witness = std::move(w);
    }
}

void AuditReport::merge(const AuditReport& other) {
    instances += other.instances;
    passed += other.passed;
    failed += other.failed;
    heuristic += other.heuristic;
    skipped += other.skipped;
    if (!witness && other.witness) witness = other.witness;
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

AuditReport auslander_spotcheck(const Presentation& m, int trials, std::uint64_t seed) {
    require_commutative(m.ring, "auslander_spotcheck");
    AuditReport rep;
    rep.check = "auslander_condition";
    Presentation s = simplify(m);
    if (is_zero(s)) return rep;
    std::mt19937_64 rng(seed);
    const Domain dom = s.domain();
    const long p = s.ring->p();
    const int r = s.ring->r();
    Resolution res = minimal_free_resolution(s);
    for (int k = 0; k <= s.ring->d(); ++k) {
        Presentation e = ext(res, k).module;
        if (is_zero(e)) continue;
        for (int t = 0; t < trials; ++t) {
            Row v(e.rank);
            for (auto& x : v) x = random_poly(rng, r, p - 1, 1, r + 1).normalized(dom);
            Presentation n = subquotient(s.ring, s.prec, {v}, e.rels, e.rank);
            int j = grade_via_ext(n);
            std::string trace = "E^" + std::to_string(k) + "(M) = " + e.to_string() + "; N generated by " +
                                row_str(v, s.ring) + "; j(N) = " + std::to_string(j);
            rep.record(j >= k, &m, seed, trace);
        }
    }
    return rep;
}

AuditReport local_duality_finite(const Presentation& m) {
    require_commutative(m.ring, "local_duality_finite");
    AuditReport rep;
    rep.check = "local_duality";
    Presentation s = simplify(m);
    if (is_zero(s)) return rep;
    const int d = s.ring->d();
    const int esc = s.ring->max_escalations();
    std::ostringstream tr;
    if (auto dl = delta(s); dl.status == Certification::certified && dl.value > 0)
        throw Error(ErrorKind::validation, "module is not of finite length (delta = " + std::to_string(dl.value) + ")");
    auto len = finite_length(s, esc);
    if (!len) {
        ++rep.heuristic;
        rep.notes.push_back("length not determined at the available precision");
        rep.record(false, &m, 0, "gr staircase did not close");
        return rep;
    }
    tr << "length(M)=" << *len;
    Resolution res = minimal_free_resolution(s);
    bool ok = true;
    for (int i = 0; i < d; ++i) {
        if (!is_zero(ext(res, i).module)) {
            ok = false;
            tr << "; E^" << i << "(M) nonzero";
        }
    }
    Presentation ed = ext(res, d).module;
    auto led = finite_length(ed, esc);
    if (!led) {
        ++rep.heuristic;
        ok = false;
        tr << "; length(E^d) undetermined";
    } else {
        tr << "; length(E^d)=" << *led;
        ok = ok && *led == *len;
    }
    NaturalMapData nm = double_dual_map(s, d);
    bool iso = is_zero(nm.kernel) && is_zero(nm.cokernel);
    tr << "; M -> E^dE^d(M) " << (iso ? "bijective" : "not bijective");
    rep.record(ok && iso, &m, 0, tr.str());
    return rep;
}

AuditReport induction_check(const Presentation& m, int r) {
    require_commutative(m.ring, "induction_check");
    if (r < m.ring->r()) throw Error(ErrorKind::validation, "induction needs at least as many variables");
    AuditReport rep;
    rep.check = "induction";
    Presentation big = m.over(m.ring->with_vars(r));
    if (is_zero(m)) {
        rep.record(is_zero(big), &m, 0, "zero module");
        return rep;
    }
    Certified<int> dh = delta(m), dg = delta(big);
    if (dh.status == Certification::heuristic || dg.status == Certification::heuristic) ++rep.heuristic;
    int jh = grade_via_ext(m), jg = grade_via_ext(big);
    int ph = pd(m), pg = pd(big);
    std::ostringstream tr;
    tr << "delta " << dh.value << " -> " << dg.value << "; j " << jh << " -> " << jg << "; pd " << ph << " -> " << pg;
    rep.record(jh == jg && ph == pg && dg.value == dh.value + (r - m.ring->r()), &m, 0, tr.str());
    return rep;
}

AuditReport torsion_pseudonull_check(const Ring& h, const Poly& f, Precision prec) {
    require_commutative(h, "torsion_pseudonull_check");
    AuditReport rep;
    rep.check = "torsion_pseudonull";
    if (f.is_zero()) throw Error(ErrorKind::validation, "f must be nonzero");
    const int s = h->r();
    Ring g = h->with_vars(s + 1);
    Poly b = Poly::monomial(Monomial::var(static_cast<std::size_t>(s)));
    Presentation m = Presentation::make(g, prec, 1, {{f}, {b}}, "Lambda/(f,b)");
    std::string trace = "f = " + f.to_string(b_names(static_cast<std::size_t>(s)), h->p());
    bool ok = pseudo_null_both_routes(m, rep, trace) && is_pseudo_null(m);
    rep.record(ok, &m, 0, trace);
    return rep;
}

AuditReport matrix_oracle_check(const Ring& ring, Precision prec, int trials, std::uint64_t seed, int word_length) {
    if (!ring->is_heisenberg()) throw Error(ErrorKind::unsupported_mode, "the matrix oracle needs the Heisenberg preset");
    AuditReport rep;
    rep.check = "matrix_oracle";
    const long p = ring->p();
    mpz_class modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(prec.a + 4));
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        heisenberg::Mat3 g = heisenberg::identity();
        Element prod = Element::constant(ring, prec, 1);
        std::string word;
        for (int k = 0; k < word_length; ++k) {
            int i = 1 + static_cast<int>(rng() % 3);
            bool inv = rng() % 2;
            g = heisenberg::multiply(g, heisenberg::generator(p, i, inv), modulus);
            std::array<mpz_class, 3> e{0, 0, 0};
            e[static_cast<std::size_t>(i - 1)] = inv ? -1 : 1;
            prod = prod * heisenberg::expand(ring, prec, e);
            word += "x" + std::to_string(i) + (inv ? "^-1" : "") + (k + 1 < word_length ? " " : "");
        }
        Element expected = heisenberg::expand(ring, prec, heisenberg::coordinates(g, p, modulus));
        bool ok = prod == expected;
        rep.record(ok, nullptr, seed, "word " + word + ": ring " + prod.to_string() + ", matrix " + expected.to_string());
    }
    return rep;
}

AuditReport symbol_multiplicativity(const Ring& ring, Precision prec, int pairs, std::uint64_t seed) {
    AuditReport rep;
    rep.check = "symbol_multiplicativity";
    std::mt19937_64 rng(seed);
    const Domain fp = Domain::residue(ring->p());
    int attempts = 0;
    while (rep.instances < pairs && attempts < 50 * pairs) {
        ++attempts;
        Element x = random_element(ring, prec, rng);
        Element y = random_element(ring, prec, rng);
        Element xy = x * y;
        if (x.v_M().is_bound || y.v_M().is_bound || xy.v_M().is_bound) continue;
        Poly lhs = xy.symbol();
        Poly rhs = (x.symbol() * y.symbol()).normalized(fp);
        rep.record(lhs == rhs, nullptr, seed, "x = " + x.to_string() + ", y = " + y.to_string());
    }
    if (rep.instances < pairs) rep.notes.push_back("fewer pairs with determined symbols than requested");
    return rep;
}

AuditReport change_of_rings_check(const Presentation& m) {
    require_commutative(m.ring, "change_of_rings_check");
    if (m.ring->coefficients() != Coefficients::padic)
        throw Error(ErrorKind::validation, "change of rings starts from a module over the p-adic ring");
    AuditReport rep;
    rep.check = "change_of_rings";
    const long p = m.ring->p();
    const int r = m.ring->r();
    Matrix prel = local::identity(m.rank);
    for (std::size_t k = 0; k < m.rank; ++k) prel[k][k] = Poly::constant(p);
    Presentation mp = quotient(m, prel);
    Ring omega = RingContext::residue_field_algebra(p, r, m.ring->default_precision(), m.ring->max_escalations());
    Presentation mbar = Presentation::make(omega, m.prec, m.rank, m.rels);
    std::ostringstream tr;
    bool ok = is_zero(ext(mp, 0).module);
    if (!ok) tr << "E^0 over Lambda nonzero; ";
    Resolution rl = minimal_free_resolution(mp);
    Resolution ro = minimal_free_resolution(mbar);
    for (int i = 0; i <= r; ++i) {
        Presentation eo = ext(ro, i).module;
        Matrix rels = eo.rels;
        for (std::size_t k = 0; k < eo.rank; ++k) {
            Row row(eo.rank);
            row[k] = Poly::constant(p);
            rels.push_back(std::move(row));
        }
        Presentation lifted = Presentation::make(m.ring, m.prec, eo.rank, std::move(rels));
        Profile a = profile(lifted);
        Profile b = profile(ext(rl, i + 1).module);
        tr << "i=" << i << ": " << a.to_string() << " vs " << b.to_string() << "; ";
        ok = ok && a == b;
    }
    rep.record(ok, &m, 0, tr.str());
    return rep;
}

AuditReport pseudo_iso_e1_check(const Presentation& m) {
    require_commutative(m.ring, "pseudo_iso_e1_check");
    AuditReport rep;
    rep.check = "pseudo_iso_e1";
    if (grade_via_ext(m) < 1) throw Error(ErrorKind::validation, "module is not torsion");
    NaturalMapData nm = double_dual_map(m, 1);
    std::string trace = "kernel:";
    bool ok = pseudo_null_both_routes(nm.kernel, rep, trace);
    trace += "; cokernel:";
    ok = pseudo_null_both_routes(nm.cokernel, rep, trace) && ok;
    rep.record(ok, &m, 0, trace);
    return rep;
}

AuditReport e1_torsion_check(const Presentation& m) {
    require_commutative(m.ring, "e1_torsion_check");
    AuditReport rep;
    rep.check = "e1_torsion";
    const int d = m.ring->d();
    Presentation s = simplify(m);
    Matrix t = torsion_submodule_level(s, d - 1);
    Presentation tor = subquotient(s.ring, s.prec, t, s.rels, s.rank);
    Profile a = profile(ext(s, 1).module);
    Profile b = profile(ext(tor, 1).module);
    // Agreement up to pseudo-null modules: both of dimension ≤ d−2, or equal δ and j.
    bool small_a = a.zero || a.delta <= d - 2, small_b = b.zero || b.delta <= d - 2;
    bool ok = a.mu == b.mu && ((small_a && small_b) || (a.delta == b.delta && a.j == b.j));
    rep.record(ok, &m, 0, "E^1(M) " + a.to_string() + " vs E^1(tor M) " + b.to_string());
    return rep;
}

AuditReport left_exactness_check(const ModuleMap& f) {
    require_commutative(f.target.ring, "left_exactness_check");
    const Presentation& mt = f.target;
    if (simplify(mt).rank != mt.rank) throw Error(ErrorKind::validation, "target presentation must be simplified");
    if (!is_zero(kernel(f))) throw Error(ErrorKind::validation, "map is not injective");
    AuditReport rep;
    rep.check = "left_exactness";
    const Domain dom = mt.domain();
    Presentation src = simplify(f.source);
    for (int i = 0; i <= mt.ring->d(); ++i) {
        Matrix u = torsion_submodule_level(mt, i);
        Matrix a = u, b = f.images;
        for (const auto& row : mt.rels) {
            a.push_back(row);
            b.push_back(row);
        }
        Matrix stacked = a;
        stacked.insert(stacked.end(), b.begin(), b.end());
        Matrix inter;
        for (const auto& z : local::syz(stacked, mt.rank, dom)) {
            Row x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(a.size()));
            Row v = local::row_times(x, a, mt.rank, dom);
            if (!std::all_of(v.begin(), v.end(), [](const Poly& q) { return q.is_zero(); })) inter.push_back(v);
        }
        Profile lhs = profile(subquotient(mt.ring, mt.prec, torsion_submodule_level(src, i), src.rels, src.rank));
        Profile rhs = profile(subquotient(mt.ring, mt.prec, inter, mt.rels, mt.rank));
        rep.record(lhs == rhs, &f.source, 0,
                   "T_" + std::to_string(i) + "(N) " + lhs.to_string() + " vs T_" + std::to_string(i) + "(M) ∩ N " +
                       rhs.to_string());
    }
    return rep;
}

AuditReport left_exactness_check(const Presentation& a, const Presentation& b) {
    Presentation sa = simplify(a), sb = simplify(b);
    ModuleMap f;
    f.source = sa;
    f.target = direct_sum(sa, sb);
    for (std::size_t k = 0; k < sa.rank; ++k) {
        Row row(f.target.rank);
        row[k] = Poly::constant(1);
        f.images.push_back(row);
    }
    return left_exactness_check(f);
}

std::vector<Presentation> random_corpus(const CorpusConfig& cfg, std::uint64_t seed) {
    if (cfg.ranks.empty()) throw Error(ErrorKind::validation, "corpus needs at least one r");
    std::mt19937_64 rng(seed);
    std::map<int, Ring> rings;
    for (int r : cfg.ranks) rings[r] = RingContext::abelian(cfg.p, r, cfg.prec, cfg.max_escalations);
    std::vector<Presentation> out;
    const long cmax = cfg.p * cfg.p;
    int attempts = 0;
    while (static_cast<int>(out.size()) < cfg.count) {
        if (++attempts > 100 * cfg.count + 100) throw Error(ErrorKind::internal, "corpus generation stalled");
        int r = cfg.ranks[rng() % cfg.ranks.size()];
        std::size_t gens = 1 + rng() % static_cast<std::uint64_t>(cfg.max_gens);
        std::size_t nrels = rng() % static_cast<std::uint64_t>(cfg.max_rels + 1);
        Matrix rels;
        for (std::size_t k = 0; k < nrels; ++k) {
            Row row(gens);
            for (auto& e : row)
                if (rng() % 2) e = random_poly(rng, r, cmax, cfg.max_degree, 2).normalized(Domain::padic(cfg.p));
            if (std::all_of(row.begin(), row.end(), [](const Poly& q) { return q.is_zero(); })) continue;
            rels.push_back(std::move(row));
        }
        Presentation m = Presentation::make(rings[r], cfg.prec, gens, std::move(rels),
                                            "corpus#" + std::to_string(out.size()));
        if (!is_zero(m)) out.push_back(std::move(m));
    }
    return out;
}

Presentation scramble(const Presentation& m, std::mt19937_64& rng) {
    const Domain dom = m.domain();
    const long p = m.ring->p();
    const int r = m.ring->r();
    Matrix rels = m.rels;
    const std::size_t n = m.rank;
    for (int step = 0; step < 3 && n > 1; ++step) {
        std::size_t a = rng() % n, b = rng() % n;
        if (a == b) continue;
        Poly c = random_poly(rng, r, p - 1, 1, 2);
        for (auto& row : rels) row[a] = (row[a] + c * row[b]).normalized(dom);
    }
    if (n > 1) {
        std::size_t a = rng() % n, b = rng() % n;
        for (auto& row : rels) std::swap(row[a], row[b]);
    }
    const std::size_t k = rels.size();
    for (int step = 0; step < 3 && k > 1; ++step) {
        std::size_t a = rng() % k, b = rng() % k;
        if (a == b) continue;
        Poly c = random_poly(rng, r, p - 1, 1, 2);
        for (std::size_t col = 0; col < n; ++col) rels[a][col] = (rels[a][col] + c * rels[b][col]).normalized(dom);
    }
    if (k > 0) {
        // Multiply one relation by the unit 1 + b_1 (or by −1 when r = 0).
        std::size_t a = rng() % k;
        Poly u = r > 0 ? Poly::constant(1) + Poly::monomial(Monomial::var(0)) : Poly::constant(-1);
        for (auto& e : rels[a]) e = (e * u).normalized(dom);
    }
    std::shuffle(rels.begin(), rels.end(), rng);
    return Presentation::make(m.ring, m.prec, n, std::move(rels), m.label);
}

std::vector<AuditReport> corpus_run(const CorpusConfig& cfg, std::uint64_t seed, int auslander_trials) {
    std::vector<AuditReport> reps(4);
    reps[0].check = "dimension_identity";
    reps[1].check = "pd_routes";
    reps[2].check = "auslander_buchsbaum";
    reps[3].check = "auslander_condition";
    CorpusConfig wide = cfg;
    wide.count = 4 * cfg.count;
    auto corpus = random_corpus(wide, seed);
    int done = 0;
    for (std::size_t idx = 0; idx < corpus.size() && done < cfg.count; ++idx) {
        const Presentation& m = corpus[idx];
        const int d = m.ring->d();
        std::string tag = "corpus index " + std::to_string(idx) + ": ";
        Certified<int> dl;
        int je = 0, dp = 0;
        PdRoutes pr;
        AuditReport au;
        try {
            dl = delta(m);
            je = grade_via_ext(m);
            pr = pd_routes(m);
            dp = depth(m);
            au = auslander_spotcheck(m, auslander_trials, seed + idx);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::step_budget) throw;
            for (auto& r : reps) {
                ++r.skipped;
                r.notes.push_back(tag + "skipped: " + e.what());
            }
            continue;
        }
        ++done;
        if (dl.status == Certification::heuristic) {
            ++reps[0].heuristic;
            reps[0].notes.push_back(tag + "delta heuristic");
        }
        reps[0].record(dl.value + je == d, &m, seed,
                       tag + "delta(gr)=" + std::to_string(dl.value) + " j(Ext)=" + std::to_string(je));
        reps[1].record(pr.agree(), &m, seed,
                       tag + "pd betti/ext/koszul = " + std::to_string(pr.betti) + "/" + std::to_string(pr.ext) + "/" +
                           std::to_string(pr.koszul));
        reps[2].record(pr.betti + dp == d, &m, seed,
                       tag + "pd=" + std::to_string(pr.betti) + " depth=" + std::to_string(dp));
        reps[3].merge(au);
    }
    return reps;
}

}  // namespace iwalg
