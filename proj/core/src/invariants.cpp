#include "iwalg/invariants.hpp"

#include <algorithm>
#include <sstream>

#include "iwalg/error.hpp"

namespace iwalg {

namespace {

bool commutative(const Ring& ring) { return ring->mode() == RingMode::abelian || ring->rules().empty(); }

bool zero_row(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const Poly& f) { return f.is_zero(); });
}

/// Resolution of M together with every E^i(M), i = 0..d.
struct Analysis {
    Resolution res;
    std::vector<Presentation> ext;
    std::vector<int> support;
};

Analysis analyse(const Presentation& m) {
    Analysis a;
    a.res = minimal_free_resolution(m);
    for (int i = 0; i <= m.ring->d(); ++i) {
        a.ext.push_back(ext(a.res, i).module);
        if (!is_zero(a.ext.back())) a.support.push_back(i);
    }
    return a;
}

int max_index(const std::vector<std::size_t>& v) {
    int best = kMinusInfinity;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) best = static_cast<int>(i);
    return best;
}

}  // namespace

Certified<int> delta(const Presentation& m) {
    if (is_zero(m)) {
        Certified<int> z;
        z.value = kMinusInfinity;
        z.precision = m.prec;
        return z;
    }
    Presentation s = commutative(m.ring) ? simplify(m) : m;
    std::function<int(Precision)> task = [&](Precision p) { return gr_dimension(s, p); };
    return certify(task, gr_working_precision(s, m.prec), m.ring->max_escalations());
}

Certified<int> grade(const Presentation& m) {
    Certified<int> c = delta(m);
    c.value = c.value == kMinusInfinity ? kPlusInfinity : m.ring->d() - c.value;
    for (auto& h : c.history) h = h == kMinusInfinity ? kPlusInfinity : m.ring->d() - h;
    return c;
}

int grade_via_ext(const Presentation& m) {
    if (is_zero(m)) return kPlusInfinity;
    auto res = minimal_free_resolution(m);
    for (int i = 0; i <= m.ring->d(); ++i)
        if (!is_zero(ext(res, i).module)) return i;
    throw Error(ErrorKind::internal, "nonzero module with vanishing E^i for all i");
}

PdRoutes pd_routes(const Presentation& m) {
    PdRoutes out;
    if (is_zero(m)) {
        out.betti = out.ext = out.koszul = kMinusInfinity;
        return out;
    }
    Analysis a = analyse(m);
    out.betti = max_index(a.res.ranks);
    out.ext = a.support.empty() ? kMinusInfinity : a.support.back();
    std::vector<std::size_t> tor;
    for (int i = 0; i <= m.ring->d(); ++i) tor.push_back(koszul_tor(m, i));
    out.koszul = max_index(tor);
    return out;
}

int pd(const Presentation& m) {
    if (is_zero(m)) return kMinusInfinity;
    return max_index(minimal_free_resolution(m).ranks);
}

int depth(const Presentation& m) {
    if (is_zero(m)) return kPlusInfinity;
    for (int i = 0; i <= m.ring->d(); ++i)
        if (koszul_ext_from_k(m, i)) return i;
    throw Error(ErrorKind::internal, "nonzero module with vanishing Ext(k, M)");
}

RankValue rank(const Presentation& m) {
    RankValue out;
    const int n = static_cast<int>(m.rank);
    if (commutative(m.ring)) {
        out.value = n - static_cast<int>(local::generic_rank(m.rels, m.rank, m.domain()));
        return out;
    }
    Matrix symbols;
    for (const auto& row : m.row_elements()) {
        Row s;
        for (const auto& e : row) s.push_back(e.v_M().is_bound ? Poly() : e.symbol());
        symbols.push_back(std::move(s));
    }
    out.value = n - static_cast<int>(graded_rank(symbols, m.ring->p()));
    out.heuristic = true;
    return out;
}

bool is_pseudo_null(const Presentation& m) { return delta(m).value <= m.ring->d() - 2; }
bool is_torsion(const Presentation& m) { return delta(m).value <= m.ring->d() - 1; }
bool is_torsion_free(const Presentation& m) { return is_zero(bidual_map(m).kernel); }

bool is_reflexive(const Presentation& m) {
    auto b = bidual_map(m);
    return is_zero(b.kernel) && is_zero(b.cokernel);
}

bool is_cohen_macaulay(const Presentation& m) {
    if (is_zero(m)) return true;
    return analyse(m).support.size() == 1;
}

MuReport mu(const Presentation& m) {
    require_commutative(m.ring, "mu");
    if (m.ring->coefficients() != Coefficients::padic)
        throw Error(ErrorKind::validation, "mu is defined for modules over Z_p-algebras");
    MuReport out;
    const Domain dom = m.domain();
    const Domain res = Domain::residue(m.ring->p());
    Presentation s = simplify(m);
    const std::size_t n = s.rank;
    if (n == 0) return out;
    Matrix prev = s.rels;
    for (int j = 0; j < 64; ++j) {
        Matrix stacked;
        for (std::size_t a = 0; a < n; ++a) {
            Row row(n);
            row[a] = Poly::constant(ipow(m.ring->p(), static_cast<unsigned>(j + 1)));
            stacked.push_back(std::move(row));
        }
        stacked.insert(stacked.end(), s.rels.begin(), s.rels.end());
        Matrix cur;
        for (const auto& z : local::syz(stacked, n, dom)) {
            Row r(z.begin(), z.begin() + static_cast<long>(n));
            if (!zero_row(r)) cur.push_back(std::move(r));
        }
        Presentation q = simplify(subquotient(m.ring, m.prec, cur, prev, n));
        int dj = static_cast<int>(q.rank) -
                 static_cast<int>(local::generic_rank(local::normalized(q.rels, res), q.rank, res));
        if (dj == 0) return out;
        if (!out.chain.empty() && dj > out.chain.back()) out.non_increasing = false;
        out.chain.push_back(dj);
        out.mu += dj;
        prev = std::move(cur);
    }
    throw Error(ErrorKind::step_budget, "p-power torsion chain did not stabilize");
}

DecompositionReport decompose_p_torsion(const Presentation& m) {
    MuReport r = mu(m);
    DecompositionReport out;
    out.mu = r.mu;
    out.chain = r.chain;
    const std::size_t len = r.chain.size();
    for (std::size_t k = 1; k <= len; ++k) {
        int count = r.chain[k - 1] - (k < len ? r.chain[k] : 0);
        if (count < 0) {
            out.consistent = false;
            continue;
        }
        for (int c = 0; c < count; ++c) out.exponents.push_back(static_cast<int>(k));
    }
    int sum = 0;
    for (int e : out.exponents) sum += e;
    if (sum != out.mu) out.consistent = false;
    for (std::size_t j = 0; j < len; ++j) {
        auto ge = std::count_if(out.exponents.begin(), out.exponents.end(), [&](int e) { return e >= static_cast<int>(j) + 1; });
        if (ge != r.chain[j]) out.consistent = false;
    }
    if (!out.exponents.empty() && out.exponents.back() >= m.prec.a)
        throw Error(ErrorKind::precision, "p-exponent " + std::to_string(out.exponents.back()) +
                                              " is not below the precision a=" + std::to_string(m.prec.a));
    return out;
}

std::string Profile::to_string() const {
    std::ostringstream os;
    if (zero) return "zero";
    os << "delta=" << delta << " j=" << j << " mu=" << mu << " betti=(";
    for (std::size_t i = 0; i < betti.size(); ++i) os << (i ? "," : "") << betti[i];
    os << ")";
    return os.str();
}

Profile profile(const Presentation& m) {
    Profile p;
    if (is_zero(m)) return p;
    p.zero = false;
    Analysis a = analyse(m);
    p.j = a.support.front();
    p.delta = m.ring->d() - p.j;
    p.betti = a.res.ranks;
    if (m.ring->coefficients() == Coefficients::padic) p.mu = mu(m).mu;
    return p;
}

namespace {

Matrix first_columns(const Matrix& rows, std::size_t k) {
    Matrix out;
    for (const auto& z : rows) {
        Row r(z.begin(), z.begin() + static_cast<long>(k));
        if (!zero_row(r)) out.push_back(std::move(r));
    }
    return out;
}

/// Generators of ann(coker rels) for a module with `rank` generators.
std::vector<Poly> annihilator(const Presentation& e) {
    const Domain dom = e.domain();
    const std::size_t k = e.rank;
    if (k == 0) return {Poly::constant(1)};
    Matrix stacked;
    Row diag(k * k);
    for (std::size_t a = 0; a < k; ++a) diag[a * k + a] = Poly::constant(1);
    stacked.push_back(std::move(diag));
    for (std::size_t b = 0; b < k; ++b)
        for (const auto& r : e.rels) {
            Row row(k * k);
            for (std::size_t a = 0; a < k; ++a) row[b * k + a] = r[a];
            stacked.push_back(std::move(row));
        }
    std::vector<Poly> out;
    for (const auto& z : local::syz(stacked, k * k, dom))
        if (!z[0].is_zero()) out.push_back(z[0]);
    return out;
}

/// {x ∈ F : g·x ∈ span(v)}.
Matrix colon(const Matrix& v, const Poly& g, std::size_t n, const Domain& dom) {
    Matrix stacked;
    for (std::size_t a = 0; a < n; ++a) {
        Row row(n);
        row[a] = g;
        stacked.push_back(std::move(row));
    }
    stacked.insert(stacked.end(), v.begin(), v.end());
    return first_columns(local::syz(stacked, n, dom), n);
}

bool contained(const Matrix& a, const Matrix& b, std::size_t n, const Domain& dom) {
    for (const auto& row : a)
        if (!local::contains(b, row, n, dom)) return false;
    return true;
}

Matrix saturate(const Matrix& rels, const Poly& g, std::size_t n, const Domain& dom) {
    Matrix cur = rels;
    for (int it = 0; it < 64; ++it) {
        Matrix next = local::minimalize(colon(cur, g, n, dom), n, dom);
        if (contained(next, cur, n, dom)) return cur;
        cur = std::move(next);
    }
    throw Error(ErrorKind::step_budget, "saturation did not stabilize");
}

Matrix intersect(const Matrix& u, const Matrix& v, std::size_t n, const Domain& dom) {
    if (u.empty() || v.empty()) return {};
    Matrix stacked = u;
    stacked.insert(stacked.end(), v.begin(), v.end());
    Matrix out;
    for (const auto& z : local::syz(stacked, n, dom)) {
        Row c(z.begin(), z.begin() + static_cast<long>(u.size()));
        Row x = local::row_times(c, u, n, dom);
        if (!zero_row(x)) out.push_back(std::move(x));
    }
    return local::minimalize(out, n, dom);
}

}  // namespace

Matrix torsion_submodule_level(const Presentation& s, int i) {
    const Domain dom = s.domain();
    const int d = s.ring->d();
    const std::size_t n = s.rank;
    if (i >= d) return local::identity(n);
    if (i < 0 || n == 0) return {};
    auto res = minimal_free_resolution(s);
    std::vector<Poly> j_gens{Poly::constant(1)};
    bool any = false;
    for (int c = d - i; c <= d; ++c) {
        Presentation e = ext(res, c).module;
        if (is_zero(e)) continue;
        auto ann = annihilator(e);
        any = true;
        std::vector<Poly> next;
        for (const auto& a : j_gens)
            for (const auto& b : ann) {
                Poly pr = (a * b).normalized(dom);
                if (!pr.is_zero()) next.push_back(pr);
            }
        j_gens = std::move(next);
    }
    if (!any) return {};
    Matrix u;
    bool first = true;
    for (const auto& g : j_gens) {
        Matrix sat = saturate(s.rels, g, n, dom);
        if (sat.empty()) return {};
        u = first ? sat : intersect(u, sat, n, dom);
        first = false;
    }
    return u;
}

bool FiltrationReport::consistent() const {
    if (!t0_matches_edd) return false;
    for (const auto& l : levels)
        if (!l.agree || !l.pure_step || (l.delta != kMinusInfinity && l.delta > l.i)) return false;
    return true;
}

FiltrationReport dimension_filtration(const Presentation& m) {
    require_commutative(m.ring, "dimension filtration");
    FiltrationReport out;
    out.module = simplify(m);
    const Presentation& s = out.module;
    const int d = s.ring->d();
    const Domain dom = s.domain();

    std::vector<Presentation> rec(static_cast<std::size_t>(d) + 1, Presentation::free(s.ring, s.prec, 0));
    rec[static_cast<std::size_t>(d)] = s;
    for (int i = 0; i < d; ++i) {
        Presentation t = rec[static_cast<std::size_t>(d - i)];
        for (int k = 0; k < i && !is_zero(t); ++k) t = loop(t);
        rec[static_cast<std::size_t>(d - i - 1)] = is_zero(t) ? t : ext(transpose(t), i + 1).module;
    }

    Matrix prev_gens;
    for (int i = 0; i <= d; ++i) {
        FiltrationLevel lvl;
        lvl.i = i;
        lvl.recursive = rec[static_cast<std::size_t>(i)];
        lvl.generators = torsion_submodule_level(s, i);
        lvl.realized = simplify(subquotient(s.ring, s.prec, lvl.generators, s.rels, s.rank));
        lvl.recursive_profile = profile(lvl.recursive);
        lvl.realized_profile = profile(lvl.realized);
        lvl.agree = lvl.recursive_profile == lvl.realized_profile;
        lvl.delta = lvl.realized_profile.delta;
        Matrix below = s.rels;
        below.insert(below.end(), prev_gens.begin(), prev_gens.end());
        Presentation step = simplify(subquotient(s.ring, s.prec, lvl.generators, below, s.rank));
        if (!is_zero(step)) {
            Profile sp = profile(step);
            lvl.pure_step = sp.delta == i;
            if (lvl.pure_step && i > 0) {
                Matrix lower = torsion_submodule_level(step, i - 1);
                lvl.pure_step = is_zero(subquotient(step.ring, step.prec, lower, step.rels, step.rank));
            }
        }
        prev_gens = lvl.generators;
        out.levels.push_back(std::move(lvl));
    }
    Presentation edd = ext(ext(s, d).module, d).module;
    out.t0_matches_edd = profile(edd) == out.levels.front().realized_profile;
    (void)dom;
    return out;
}

InvariantReport invariants(const Presentation& m) {
    InvariantReport r;
    r.zero = is_zero(m);
    r.delta = delta(m);
    r.j = grade(m);
    r.certification = r.delta.status;
    r.escalations = r.delta.escalations;
    const int d = m.ring->d();
    r.is_torsion = r.delta.value <= d - 1;
    r.is_pseudo_null = r.delta.value <= d - 2;
    r.rank = rank(m);
    if (!commutative(m.ring)) return r;
    if (r.zero) {
        r.j_ext = kPlusInfinity;
        r.pd = PdRoutes{kMinusInfinity, kMinusInfinity, kMinusInfinity};
        r.depth = kPlusInfinity;
        r.betti = std::vector<std::size_t>{0};
        r.ext_support = std::vector<int>{};
        r.is_torsion_free = true;
        r.is_reflexive = true;
        r.is_cohen_macaulay = true;
        if (m.ring->coefficients() == Coefficients::padic) r.mu = MuReport{};
        return r;
    }
    Analysis a = analyse(m);
    r.j_ext = a.support.front();
    PdRoutes pdr;
    pdr.betti = max_index(a.res.ranks);
    pdr.ext = a.support.back();
    std::vector<std::size_t> tor;
    for (int i = 0; i <= d; ++i) tor.push_back(koszul_tor(m, i));
    pdr.koszul = max_index(tor);
    r.pd = pdr;
    r.depth = depth(m);
    r.betti = a.res.ranks;
    r.ext_support = a.support;
    auto b = bidual_map(m);
    r.is_torsion_free = is_zero(b.kernel);
    r.is_reflexive = is_zero(b.kernel) && is_zero(b.cokernel);
    r.is_cohen_macaulay = a.support.size() == 1;
    if (m.ring->coefficients() == Coefficients::padic) r.mu = mu(m);
    return r;
}

}  // namespace iwalg
