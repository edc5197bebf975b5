#include "iwalg/sbasis.hpp"

#include <map>

#include "iwalg/error.hpp"

namespace iwalg {

const char* to_string(Certification c) { return c == Certification::certified ? "certified" : "heuristic"; }

namespace {

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_cmp(a, b) < 0; }
};

void monomials_below(int nvars, int bound, std::vector<Monomial>& out) {
    // All monomials in nvars variables of total degree < bound.
    std::vector<Monomial> frontier{Monomial::one()};
    out.push_back(Monomial::one());
    for (int deg = 1; deg < bound; ++deg) {
        std::vector<Monomial> next;
        for (const auto& m : frontier) {
            int last = 0;
            for (int v = nvars - 1; v >= 0; --v)
                if (m.exp[static_cast<std::size_t>(v)]) {
                    last = v;
                    break;
                }
            for (int v = last; v < nvars; ++v) next.push_back(m * Monomial::var(static_cast<std::size_t>(v)));
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += m;
    return static_cast<std::int64_t>(t);
}

class Engine {
public:
    Engine(const Presentation& pres, int D) : pres_(pres), D_(D), p_(pres.ring->p()) {
        residue_ = pres.ring->coefficients() == Coefficients::residue;
        r_ = pres.ring->r();
        monomials_below(r_, D_, monos_);
        for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i]] = i;
        const std::size_t n = pres.rank;
        mod_.resize(n * monos_.size());
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < monos_.size(); ++i) {
                int e = residue_ ? 1 : D_ - static_cast<int>(monos_[i].deg);
                mpz_class m = ipow(p_, static_cast<unsigned>(e));
                if (m > (mpz_class(1) << 62)) throw Error(ErrorKind::precision, "p^D exceeds the coefficient width");
                mod_[j * monos_.size() + i] = m.get_si();
            }
        pivots_.assign(mod_.size(), {});
    }

    Precision work_precision() const { return {D_, D_}; }

    std::vector<std::int64_t> to_coords(const std::vector<Element>& row) const {
        std::vector<std::int64_t> v(mod_.size(), 0);
        for (std::size_t j = 0; j < row.size(); ++j)
            for (const auto& [m, c] : row[j].terms()) {
                auto it = index_.find(m);
                if (it == index_.end()) continue;
                std::size_t k = j * monos_.size() + it->second;
                v[k] = c % mod_[k];
            }
        return v;
    }

    int vp(std::int64_t c) const {
        if (residue_) return 0;
        int s = 0;
        while (c % p_ == 0) {
            c /= p_;
            ++s;
        }
        return s;
    }

    /// Coordinate of the lead (minimal weight, then largest gr monomial); SIZE_MAX if zero.
    std::size_t lead(const std::vector<std::int64_t>& v, int& s_out) const {
        std::size_t best = SIZE_MAX;
        int best_w = 0, best_s = 0;
        Monomial best_m;
        std::uint32_t best_j = 0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] == 0) continue;
            std::size_t j = k / monos_.size();
            const Monomial& a = monos_[k % monos_.size()];
            int s = vp(v[k]);
            int w = static_cast<int>(a.deg) + s;
            Monomial g = gr_monomial(a, s);
            bool better = best == SIZE_MAX || w < best_w ||
                          (w == best_w && term_cmp(static_cast<std::uint32_t>(j), g, best_j, best_m) > 0);
            if (better) {
                best = k;
                best_w = w;
                best_s = s;
                best_m = g;
                best_j = static_cast<std::uint32_t>(j);
            }
        }
        s_out = best_s;
        return best;
    }

    Monomial gr_monomial(const Monomial& a, int s) const {
        Monomial g;
        g.exp[0] = static_cast<std::uint16_t>(s);
        for (int i = 0; i < r_; ++i) g.exp[static_cast<std::size_t>(i) + 1] = a.exp[static_cast<std::size_t>(i)];
        g.deg = a.deg + static_cast<std::uint32_t>(s);
        return g;
    }

    void insert(std::vector<std::int64_t> v) {
        long guard = 0;
        while (true) {
            if (++guard > 1000000) throw Error(ErrorKind::step_budget, "standard basis reduction did not terminate");
            int t = 0;
            std::size_t c = lead(v, t);
            if (c == SIZE_MAX) return;
            auto& slot = pivots_[c];
            if (!slot) {
                slot = Pivot{std::move(v), t};
                return;
            }
            if (slot->s > t) {
                std::swap(slot->v, v);
                std::swap(slot->s, t);
            }
            // Now slot->s <= t: eliminate coordinate c from v.
            const int s = slot->s;
            std::int64_t f;
            if (residue_) {
                f = static_cast<std::int64_t>((static_cast<__int128>(v[c]) * inv_mod(slot->v[c], p_)) % p_);
            } else {
                std::int64_t pk = 1;
                for (int i = 0; i < s; ++i) pk *= p_;
                std::int64_t m = mod_[c] / pk;
                std::int64_t upiv = (slot->v[c] / pk) % m, uv = (v[c] / pk) % m;
                f = static_cast<std::int64_t>((static_cast<__int128>(uv) * inv_mod(upiv, m)) % m);
            }
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (slot->v[k] == 0) continue;
                __int128 x = static_cast<__int128>(v[k]) - static_cast<__int128>(f) * slot->v[k];
                x %= mod_[k];
                if (x < 0) x += mod_[k];
                v[k] = static_cast<std::int64_t>(x);
            }
        }
    }

    StandardBasis finish(const Presentation& pres) const {
        StandardBasis sb{pres, D_, {}, {}, GradedSubmodule(p_, static_cast<std::size_t>(r_) + 1, pres.rank)};
        const Precision wp = work_precision();
        Matrix lead_rows;
        for (std::size_t c = 0; c < pivots_.size(); ++c) {
            if (!pivots_[c]) continue;
            const auto& pv = *pivots_[c];
            std::vector<std::vector<Element::TermT>> comps(pres.rank);
            for (std::size_t k = 0; k < pv.v.size(); ++k)
                if (pv.v[k]) comps[k / monos_.size()].emplace_back(monos_[k % monos_.size()], pv.v[k]);
            std::vector<Element> row;
            for (auto& t : comps) row.push_back(Element::from_terms(pres.ring, wp, std::move(t)));
            sb.basis.push_back(std::move(row));
            std::uint32_t j = static_cast<std::uint32_t>(c / monos_.size());
            Monomial g = gr_monomial(monos_[c % monos_.size()], pv.s);
            sb.leads.emplace_back(j, g);
        }
        if (residue_)
            for (std::size_t j = 0; j < pres.rank; ++j) sb.leads.emplace_back(static_cast<std::uint32_t>(j), Monomial::var(0));
        for (const auto& [j, g] : sb.leads) {
            Row row(pres.rank);
            row[j] = Poly::monomial(g);
            lead_rows.push_back(std::move(row));
        }
        sb.leading = groebner(GradedSubmodule(p_, static_cast<std::size_t>(r_) + 1, pres.rank, std::move(lead_rows)));
        return sb;
    }

    const std::vector<Monomial>& monos() const { return monos_; }

private:
    struct Pivot {
        std::vector<std::int64_t> v;
        int s;
    };
    const Presentation& pres_;
    int D_;
    long p_;
    int r_ = 0;
    bool residue_ = false;
    std::vector<Monomial> monos_;
    std::map<Monomial, std::size_t, MonoLess> index_;
    std::vector<std::int64_t> mod_;
    std::vector<std::optional<Pivot>> pivots_;
};

}  // namespace

StandardBasis standard_basis(const Presentation& rows, Precision prec) {
    const int D = std::min(prec.a, prec.N);
    if (D < 1) throw Error(ErrorKind::precision, "precision must be positive");
    Engine eng(rows, D);
    const Precision wp = eng.work_precision();
    for (const auto& rel : rows.rels) {
        std::vector<Element> row;
        int v = kPlusInfinity;
        for (const auto& e : rel) {
            row.push_back(Element::from_poly(rows.ring, wp, e));
            v = std::min(v, row.back().v_M().value);
        }
        for (const auto& beta : eng.monos()) {
            if (v != kPlusInfinity && static_cast<int>(beta.deg) + v >= D) continue;
            Element mono = Element::from_terms(rows.ring, wp, {{beta, 1}});
            std::vector<Element> prod;
            for (const auto& e : row) prod.push_back(mono * e);
            eng.insert(eng.to_coords(prod));
        }
    }
    return eng.finish(rows);
}

GradedSubmodule gr_module(const Presentation& m, Precision prec) { return standard_basis(m, prec).leading; }

namespace {
constexpr int kMaxDoubledDegree = 32;
}

Precision gr_working_precision(const Presentation& m, Precision prec) {
    const Domain dom = m.domain();
    // Reducing by a relation whose tail is much heavier than its lead can
    // surface leads of about twice the heaviest term weight.
    int heaviest = 0;
    for (const auto& rel : m.rels)
        for (const auto& e : rel)
            for (const auto& [mono, c] : e.terms()) {
                mpz_class x = c;
                dom.normalize(x);
                if (x != 0) heaviest = std::max(heaviest, static_cast<int>(mono.deg) + dom.valuation(x));
            }
    int D = std::max(std::min(prec.a, prec.N), 2 * heaviest + 2);
    const mpz_class width = mpz_class(1) << 62;
    auto fits = [&](int e) { return ipow(m.ring->p(), static_cast<unsigned>(e)) <= width; };
    // Raise D until it clears every S-pair among the minimal leads found so far.
    while (!fits(D)) --D;
    for (int round = 0; round < 16; ++round) {
        auto sb = standard_basis(m, Precision{D, D});
        std::vector<std::pair<std::uint32_t, Monomial>> mins;
        for (const auto& [j, g] : sb.leads) {
            bool redundant = false;
            for (const auto& [k, h] : sb.leads)
                if (k == j && h.divides(g) && !(h == g)) redundant = true;
            if (!redundant) mins.emplace_back(j, g);
        }
        int need = D;
        for (std::size_t x = 0; x < mins.size(); ++x)
            for (std::size_t y = x + 1; y < mins.size(); ++y)
                if (mins[x].first == mins[y].first)
                    need = std::max(need, static_cast<int>(mins[x].second.lcm(mins[y].second).deg) + 2);
        if (need <= D || !fits(need)) break;
        D = need;
    }
    // Truncation only loses leads, so a drop between D and 2D means D was too low.
    while (fits(2 * D) && 2 * D <= kMaxDoubledDegree) {
        if (gr_dimension(m, Precision{D, D}) == gr_dimension(m, Precision{2 * D, 2 * D})) break;
        D *= 2;
    }
    return Precision{std::max(prec.a, D), std::max(prec.N, D)};
}

int gr_dimension(const Presentation& m, Precision prec) {
    if (m.rank == 0) return kMinusInfinity;
    auto sb = standard_basis(m, prec);
    return monomial_quotient_dim(static_cast<std::size_t>(m.ring->r()) + 1, m.rank, sb.leads);
}

std::optional<std::size_t> gr_length(const Presentation& m, Precision prec) {
    if (m.rank == 0) return 0;
    auto sb = standard_basis(m, prec);
    const std::size_t nvars = static_cast<std::size_t>(m.ring->r()) + 1;
    auto len = monomial_quotient_length(nvars, m.rank, sb.leads);
    if (!len) return std::nullopt;
    // Certified only if every monomial of degree D lies in the lead module.
    std::vector<Monomial> all;
    monomials_below(static_cast<int>(nvars), sb.D + 1, all);
    for (std::size_t j = 0; j < m.rank; ++j) {
        bool unit = false;
        for (const auto& [c, g] : sb.leads)
            if (c == j && g.deg == 0) unit = true;
        if (unit) continue;
        for (const auto& mono : all) {
            if (static_cast<int>(mono.deg) != sb.D) continue;
            bool covered = false;
            for (const auto& [c, g] : sb.leads)
                if (c == j && g.divides(mono)) {
                    covered = true;
                    break;
                }
            if (!covered) return std::nullopt;
        }
    }
    return len;
}

}  // namespace iwalg
