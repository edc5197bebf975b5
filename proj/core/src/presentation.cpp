#include "iwalg/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "iwalg/error.hpp"
#include "iwalg/groebner.hpp"

namespace iwalg {

void require_commutative(const Ring& ring, const char* what) {
    if (ring->mode() == RingMode::rules && !ring->rules().empty())
        throw Error(ErrorKind::unsupported_mode, std::string(what) + " is not available for rule-presented rings");
}

Presentation Presentation::make(Ring ring, Precision prec, std::size_t rank, Matrix rels, std::string label) {
    Presentation m;
    Domain dom = ring->exact_domain();
    for (auto& row : rels) {
        if (row.size() != rank)
            throw Error(ErrorKind::validation, "relation has " + std::to_string(row.size()) + " entries, expected " +
                                                   std::to_string(rank));
        for (auto& e : row) {
            for (const auto& [mono, c] : e.terms())
                for (std::size_t v = static_cast<std::size_t>(ring->r()); v < kMaxVars; ++v)
                    if (mono.exp[v]) throw Error(ErrorKind::validation, "relation uses a variable outside the ring");
            e = e.normalized(dom);
        }
    }
    m.ring = std::move(ring);
    m.prec = prec;
    m.rank = rank;
    m.rels = std::move(rels);
    m.label = std::move(label);
    return m;
}

Presentation Presentation::free(Ring ring, Precision prec, std::size_t rank, std::string label) {
    return make(std::move(ring), prec, rank, {}, std::move(label));
}

std::vector<std::vector<Element>> Presentation::row_elements() const {
    std::vector<std::vector<Element>> out;
    for (const auto& row : rels) {
        std::vector<Element> r;
        for (const auto& e : row) r.push_back(Element::from_poly(ring, prec, e));
        out.push_back(std::move(r));
    }
    return out;
}

Presentation Presentation::over(Ring other) const {
    if (other->r() < ring->r()) throw Error(ErrorKind::ring_mismatch, "target ring has fewer variables");
    return make(std::move(other), prec, rank, rels, label);
}

std::string Presentation::to_string() const {
    std::ostringstream os;
    auto names = b_names(static_cast<std::size_t>(ring->r()));
    os << "rank=" << rank << " rels=[";
    for (std::size_t i = 0; i < rels.size(); ++i) {
        os << (i ? ", " : "") << "[";
        for (std::size_t j = 0; j < rels[i].size(); ++j) os << (j ? ", " : "") << rels[i][j].to_string(names, ring->p());
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace local {

bool is_unit(const Poly& f, const Domain& dom) {
    mpz_class c = f.constant_term();
    if (dom.is_field()) dom.normalize(c);
    return c != 0 && dom.is_unit(c);
}

namespace {

/// Constant-term matrix reduced mod p.
std::vector<std::vector<long>> residue_matrix(const Matrix& rows, std::size_t ncols, long p) {
    std::vector<std::vector<long>> out;
    for (const auto& row : rows) {
        std::vector<long> r(ncols, 0);
        for (std::size_t j = 0; j < ncols && j < row.size(); ++j) {
            mpz_class c = row[j].constant_term();
            mpz_fdiv_r_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
            r[j] = c.get_si();
        }
        out.push_back(std::move(r));
    }
    return out;
}

long inv_mod(long a, long p) {
    long r = 1, e = p - 2, b = a % p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

/// Incremental echelon basis over F_p; `add` returns whether v was independent.
class Echelon {
public:
    Echelon(std::size_t n, long p) : n_(n), p_(p) {}
    bool add(std::vector<long> v) {
        for (const auto& [piv, b] : basis_) {
            if (v[piv] == 0) continue;
            long f = v[piv];
            for (std::size_t k = 0; k < n_; ++k) v[k] = ((v[k] - f * b[k]) % p_ + p_) % p_;
        }
        // Pivot at the rightmost nonzero coordinate.
        for (std::size_t k = n_; k-- > 0;) {
            if (v[k] == 0) continue;
            long inv = inv_mod(v[k], p_);
            for (auto& x : v) x = x * inv % p_;
            for (auto& [piv, b] : basis_) {
                if (b[k] == 0) continue;
                long f = b[k];
                for (std::size_t t = 0; t < n_; ++t) b[t] = ((b[t] - f * v[t]) % p_ + p_) % p_;
            }
            basis_.emplace_back(k, std::move(v));
            return true;
        }
        return false;
    }
    std::size_t rank() const { return basis_.size(); }
    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> out;
        for (const auto& [piv, b] : basis_) out.push_back(piv);
        return out;
    }

private:
    std::size_t n_;
    long p_;
    std::vector<std::pair<std::size_t, std::vector<long>>> basis_;
};

std::vector<Vec> to_vecs(const Matrix& rows) {
    std::vector<Vec> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(row_to_vec(r));
    return out;
}

}  // namespace

std::size_t rank_mod_m(const Matrix& rows, std::size_t ncols, const Domain& dom) {
    Echelon e(ncols, dom.p());
    for (auto& v : residue_matrix(rows, ncols, dom.p())) e.add(std::move(v));
    return e.rank();
}

std::vector<std::size_t> independent_rows_mod_m(const Matrix& rows, std::size_t ncols, const Domain& dom) {
    Echelon e(ncols, dom.p());
    std::vector<std::size_t> out;
    auto res = residue_matrix(rows, ncols, dom.p());
    for (std::size_t i = 0; i < res.size(); ++i)
        if (e.add(std::move(res[i]))) out.push_back(i);
    return out;
}

Matrix syz(const Matrix& rows, std::size_t ncols, const Domain& dom) {
    if (rows.empty()) return {};
    auto s = syzygies(to_vecs(rows), static_cast<std::uint32_t>(ncols), dom);
    Matrix out;
    for (const auto& v : s) out.push_back(vec_to_row(v, rows.size()));
    return out;
}

std::vector<std::size_t> essential_rows(const Matrix& rows, const Matrix& syzygies, const Domain& dom) {
    Echelon e(rows.size(), dom.p());
    for (auto& v : residue_matrix(syzygies, rows.size(), dom.p())) e.add(std::move(v));
    auto piv = e.pivots();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool zero = std::all_of(rows[i].begin(), rows[i].end(), [](const Poly& f) { return f.is_zero(); });
        if (!zero && std::find(piv.begin(), piv.end(), i) == piv.end()) out.push_back(i);
    }
    return out;
}

Matrix minimalize(const Matrix& rows, std::size_t ncols, const Domain& dom) {
    Matrix nz;
    for (const auto& r : rows)
        if (!std::all_of(r.begin(), r.end(), [](const Poly& f) { return f.is_zero(); })) nz.push_back(r);
    if (nz.size() <= 1) return nz;
    Matrix s = syz(nz, ncols, dom);
    Matrix out;
    for (auto i : essential_rows(nz, s, dom)) out.push_back(nz[i]);
    return out;
}

std::optional<std::pair<Poly, Row>> lift(const Matrix& gens, const Row& y, std::size_t ncols, const Domain& dom) {
    Row zero(gens.size());
    if (std::all_of(y.begin(), y.end(), [](const Poly& f) { return f.is_zero(); }))
        return std::make_pair(Poly::constant(1), zero);
    if (gens.empty()) return std::nullopt;
    Matrix stacked;
    stacked.push_back(y);
    stacked.insert(stacked.end(), gens.begin(), gens.end());
    Matrix s = syz(stacked, ncols, dom);
    for (const auto& z : s) {
        if (!is_unit(z[0], dom)) continue;
        Row c;
        for (std::size_t i = 1; i < z.size(); ++i) c.push_back((-z[i]).normalized(dom));
        return std::make_pair(z[0], c);
    }
    return std::nullopt;
}

bool contains(const Matrix& gens, const Row& y, std::size_t ncols, const Domain& dom) {
    if (std::all_of(y.begin(), y.end(), [](const Poly& f) { return f.is_zero(); })) return true;
    if (gens.empty()) return false;
    auto gb = groebner_basis(to_vecs(gens), dom, false);
    if (reduces_to_zero(row_to_vec(y), gb, dom)) return true;
    (void)ncols;
    return lift(gens, y, ncols, dom).has_value();
}

std::size_t generic_rank(const Matrix& rows, std::size_t ncols, const Domain& dom) {
    (void)ncols;
    if (rows.empty()) return 0;
    return lead_component_count(groebner_basis(to_vecs(rows), dom, false));
}

Matrix transpose(const Matrix& m, std::size_t ncols) {
    Matrix t(ncols, Row(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
    return t;
}

Row row_times(const Row& x, const Matrix& b, std::size_t ncols_b, const Domain& dom) {
    Row out(ncols_b);
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].is_zero()) continue;
        for (std::size_t j = 0; j < ncols_b; ++j)
            if (!b[k][j].is_zero()) out[j] = out[j] + x[k] * b[k][j];
    }
    for (auto& e : out) e = e.normalized(dom);
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t ncols_b, const Domain& dom) {
    Matrix out;
    out.reserve(a.size());
    for (const auto& row : a) out.push_back(row_times(row, b, ncols_b, dom));
    return out;
}

Matrix identity(std::size_t n) {
    Matrix m(n, Row(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Poly::constant(1);
    return m;
}

Matrix normalized(const Matrix& m, const Domain& dom) {
    Matrix out = m;
    for (auto& row : out)
        for (auto& e : row) e = e.normalized(dom);
    return out;
}

bool is_zero_matrix(const Matrix& m) {
    for (const auto& row : m)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

}  // namespace local

bool ModuleMap::well_defined() const {
    Domain dom = target.domain();
    for (const auto& r : source.rels) {
        Row img = local::row_times(r, images, target.rank, dom);
        if (!local::contains(target.rels, img, target.rank, dom)) return false;
    }
    return true;
}

Presentation subquotient(const Ring& ring, Precision prec, const Matrix& gens, const Matrix& rels, std::size_t ncols) {
    require_commutative(ring, "subquotient");
    Domain dom = ring->exact_domain();
    if (gens.empty()) return Presentation::free(ring, prec, 0);
    Matrix stacked = gens;
    stacked.insert(stacked.end(), rels.begin(), rels.end());
    Matrix s = local::syz(stacked, ncols, dom);
    Matrix out;
    for (const auto& z : s) {
        Row r(z.begin(), z.begin() + static_cast<long>(gens.size()));
        if (!std::all_of(r.begin(), r.end(), [](const Poly& f) { return f.is_zero(); })) out.push_back(std::move(r));
    }
    return Presentation::make(ring, prec, gens.size(), std::move(out));
}

Presentation kernel(const ModuleMap& f) {
    require_commutative(f.source.ring, "kernel");
    Domain dom = f.source.domain();
    const std::size_t a = f.source.rank, b = f.target.rank;
    if (a == 0) return Presentation::free(f.source.ring, f.source.prec, 0);
    Matrix stacked = f.images;
    stacked.insert(stacked.end(), f.target.rels.begin(), f.target.rels.end());
    Matrix k;
    if (b == 0) {
        k = local::identity(a);
    } else {
        for (const auto& z : local::syz(stacked, b, dom)) {
            Row r(z.begin(), z.begin() + static_cast<long>(a));
            if (!std::all_of(r.begin(), r.end(), [](const Poly& e) { return e.is_zero(); })) k.push_back(std::move(r));
        }
    }
    return subquotient(f.source.ring, f.source.prec, k, f.source.rels, a);
}

Presentation image(const ModuleMap& f) {
    return subquotient(f.target.ring, f.target.prec, f.images, f.target.rels, f.target.rank);
}

Presentation coker(const ModuleMap& f) {
    Matrix rels = f.target.rels;
    rels.insert(rels.end(), f.images.begin(), f.images.end());
    return Presentation::make(f.target.ring, f.target.prec, f.target.rank, std::move(rels), f.target.label);
}

Presentation direct_sum(const Presentation& m, const Presentation& n) {
    if (!m.ring->same_algebra(*n.ring)) throw Error(ErrorKind::ring_mismatch, "direct sum over different rings");
    const std::size_t a = m.rank, b = n.rank;
    Matrix rels;
    for (const auto& r : m.rels) {
        Row row = r;
        row.resize(a + b);
        rels.push_back(std::move(row));
    }
    for (const auto& r : n.rels) {
        Row row(a);
        row.insert(row.end(), r.begin(), r.end());
        rels.push_back(std::move(row));
    }
    std::string label = m.label.empty() || n.label.empty() ? "" : m.label + "+" + n.label;
    return Presentation::make(m.ring, m.prec.meet(n.prec), a + b, std::move(rels), label);
}

Presentation quotient(const Presentation& m, const Matrix& extra_rels) {
    Matrix rels = m.rels;
    rels.insert(rels.end(), extra_rels.begin(), extra_rels.end());
    return Presentation::make(m.ring, m.prec, m.rank, std::move(rels), m.label);
}

namespace {

std::size_t row_weight(const Row& r) {
    std::size_t w = 0;
    for (const auto& e : r) w += e.terms().size();
    return w;
}

void make_primitive(Row& row, const Domain& dom) {
    Vec v = row_to_vec(row);
    vec_make_primitive(v, dom);
    row = vec_to_row(v, row.size());
}

}  // namespace

namespace {

// A single-entry relation c*b^α*g with g(0) a unit generates the same local
// submodule as p^{v(c)}*b^α.
void strip_unit_cofactor(Row& row, const Domain& dom) {
    const Poly* f = nullptr;
    std::size_t at = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j].is_zero()) continue;
        if (f) return;
        f = &row[j];
        at = j;
    }
    if (!f) return;
    const auto& terms = f->terms();
    Monomial g = terms.front().first;
    int v = kPlusInfinity;
    for (const auto& [mono, c] : terms) {
        for (std::size_t k = 0; k < kMaxVars; ++k) g.exp[k] = std::min(g.exp[k], mono.exp[k]);
        v = std::min(v, dom.valuation(c));
    }
    g.deg = 0;
    for (auto e : g.exp) g.deg += e;
    for (const auto& [mono, c] : terms) {
        if (mono != g) continue;
        if (dom.valuation(c) != v) return;
        row[at] = Poly::monomial(g, dom.is_field() ? mpz_class(1) : ipow(dom.p(), static_cast<unsigned>(v)));
        return;
    }
}

}  // namespace

Simplified simplify_with_map(const Presentation& m) {
    require_commutative(m.ring, "simplify");
    Domain dom = m.domain();
    Matrix rels;
    for (const auto& r : m.rels)
        if (!std::all_of(r.begin(), r.end(), [](const Poly& f) { return f.is_zero(); })) rels.push_back(r);
    std::vector<std::size_t> kept(m.rank);
    for (std::size_t j = 0; j < m.rank; ++j) kept[j] = j;

    while (true) {
        // Pick the unit entry in the sparsest row; ties by smallest entry.
        std::size_t bi = SIZE_MAX, bj = SIZE_MAX, best = SIZE_MAX;
        for (std::size_t i = 0; i < rels.size(); ++i) {
            std::size_t w = row_weight(rels[i]);
            for (std::size_t j = 0; j < kept.size(); ++j) {
                if (!local::is_unit(rels[i][j], dom)) continue;
                std::size_t score = w * 64 + rels[i][j].terms().size();
                if (score < best) {
                    best = score;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == SIZE_MAX) break;
        const Row piv = rels[bi];
        const Poly u = piv[bj];
        Matrix next;
        for (std::size_t k = 0; k < rels.size(); ++k) {
            if (k == bi) continue;
            Row r = rels[k];
            if (!r[bj].is_zero()) {
                Poly c = r[bj];
                for (std::size_t t = 0; t < r.size(); ++t) r[t] = (u * r[t] - c * piv[t]).normalized(dom);
            }
            r.erase(r.begin() + static_cast<long>(bj));
            if (!std::all_of(r.begin(), r.end(), [](const Poly& f) { return f.is_zero(); })) {
                make_primitive(r, dom);
                next.push_back(std::move(r));
            }
        }
        rels = std::move(next);
        kept.erase(kept.begin() + static_cast<long>(bj));
    }
    for (auto& r : rels) strip_unit_cofactor(r, dom);
    rels = local::minimalize(rels, kept.size(), dom);
    for (auto& r : rels) make_primitive(r, dom);
    Simplified out{Presentation::make(m.ring, m.prec, kept.size(), std::move(rels), m.label), std::move(kept)};
    return out;
}

Presentation simplify(const Presentation& m) { return simplify_with_map(m).pres; }

bool is_zero(const Presentation& m) {
    return m.rank == 0 || local::rank_mod_m(m.rels, m.rank, m.domain()) == m.rank;
}

std::size_t min_generators(const Presentation& m) {
    return m.rank - local::rank_mod_m(m.rels, m.rank, m.domain());
}

}  // namespace iwalg
