#include "iwalg/poly.hpp"

#include <algorithm>
#include <sstream>

#include "iwalg/error.hpp"

namespace iwalg {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::parse: return "parse";
        case ErrorKind::validation: return "validation";
        case ErrorKind::ring_mismatch: return "ring_mismatch";
        case ErrorKind::precision: return "precision";
        case ErrorKind::step_budget: return "step_budget";
        case ErrorKind::unsupported_mode: return "unsupported_mode";
        case ErrorKind::internal: return "internal";
    }
    return "internal";
}

Monomial Monomial::var(std::size_t i, std::uint16_t power) {
    Monomial m;
    m.exp[i] = power;
    m.deg = power;
    return m;
}

bool Monomial::divides(const Monomial& other) const {
    if (deg > other.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] > other.exp[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(exp[i] + other.exp[i]);
    m.deg = deg + other.deg;
    return m;
}

Monomial Monomial::operator/(const Monomial& other) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(exp[i] - other.exp[i]);
    m.deg = deg - other.deg;
    return m;
}

Monomial Monomial::lcm(const Monomial& other) const {
    Monomial m;
    m.deg = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        m.exp[i] = std::max(exp[i], other.exp[i]);
        m.deg += m.exp[i];
    }
    return m;
}

int Monomial::support_mask() const {
    int mask = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] > 0) mask |= (1 << i);
    return mask;
}

int degrevlex_cmp(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    for (std::size_t i = kMaxVars; i-- > 0;) {
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    }
    return 0;
}

int term_cmp(std::uint32_t ca, const Monomial& ma, std::uint32_t cb, const Monomial& mb) {
    if (ca != cb) return ca < cb ? 1 : -1;
    return degrevlex_cmp(ma, mb);
}

mpz_class ipow(long base, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

// ---------------------------------------------------------------- Domain

void Domain::normalize(mpz_class& c) const {
    if (field_) {
        mpz_fdiv_r_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p_));
    }
}

int Domain::valuation(const mpz_class& c) const {
    if (field_ || c == 0) return 0;
    return static_cast<int>(mpz_remove(mpz_class().get_mpz_t(), c.get_mpz_t(), mpz_class(p_).get_mpz_t()));
}

bool Domain::is_unit(const mpz_class& c) const {
    return mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p_)) != 0;
}

mpz_class Domain::unit_part(const mpz_class& c) const {
    if (field_ || c == 0) return c;
    mpz_class u;
    mpz_remove(u.get_mpz_t(), c.get_mpz_t(), mpz_class(p_).get_mpz_t());
    return u;
}

mpz_class Domain::inverse_mod_p(const mpz_class& c) const {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), c.get_mpz_t(), mpz_class(p_).get_mpz_t()))
        throw Error(ErrorKind::internal, "inverse of non-unit");
    return r;
}

// ---------------------------------------------------------------- Poly

namespace {

bool term_desc(const Poly::TermT& a, const Poly::TermT& b) { return degrevlex_cmp(a.first, b.first) > 0; }

}  // namespace

Poly Poly::constant(const mpz_class& c) { return monomial(Monomial::one(), c); }

Poly Poly::monomial(const Monomial& m, const mpz_class& c) {
    Poly p;
    if (c != 0) p.terms_.emplace_back(m, c);
    return p;
}

Poly Poly::from_terms(std::vector<TermT> terms) {
    std::sort(terms.begin(), terms.end(), term_desc);
    Poly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first)
            p.terms_.back().second += t.second;
        else
            p.terms_.push_back(std::move(t));
        if (p.terms_.back().second == 0) p.terms_.pop_back();
    }
    return p;
}

mpz_class Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().first.deg == 0) return terms_.back().second;
    return 0;
}

int Poly::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.deg); }

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int c = i == terms_.size()     ? -1
                : j == o.terms_.size() ? 1
                                       : degrevlex_cmp(terms_[i].first, o.terms_[j].first);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            mpz_class s = terms_[i].second + o.terms_[j].second;
            if (s != 0) r.terms_.emplace_back(terms_[i].first, s);
            ++i;
            ++j;
        }
    }
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    std::vector<TermT> all;
    all.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) all.emplace_back(a.first * b.first, a.second * b.second);
    return from_terms(std::move(all));
}

Poly Poly::scaled(const mpz_class& c) const {
    if (c == 0) return {};
    Poly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

Poly Poly::shifted(const Monomial& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.first = t.first * m;
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second) return false;
    return true;
}

Poly Poly::normalized(const Domain& dom) const {
    Poly r;
    for (const auto& t : terms_) {
        mpz_class c = t.second;
        dom.normalize(c);
        if (c != 0) r.terms_.emplace_back(t.first, c);
    }
    return r;
}

namespace {

std::string coeff_string(const mpz_class& c, long p, bool& is_one) {
    is_one = false;
    if (p > 1 && c != 0) {
        mpz_class u;
        unsigned long e = mpz_remove(u.get_mpz_t(), c.get_mpz_t(), mpz_class(p).get_mpz_t());
        if (e > 0) {
            std::string ps = e == 1 ? "p" : "p^" + std::to_string(e);
            if (u == 1) return ps;
            return u.get_str() + "*" + ps;
        }
    }
    if (c == 1) {
        is_one = true;
        return "1";
    }
    return c.get_str();
}

}  // namespace

std::string Poly::to_string(const std::vector<std::string>& names, long p) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpz_class a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool one = false;
        std::string cs = coeff_string(a, p, one);
        bool wrote = false;
        if (!one || m.deg == 0) {
            os << cs;
            wrote = true;
        }
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (m.exp[i] == 0) continue;
            if (wrote) os << "*";
            os << (i < names.size() ? names[i] : "v" + std::to_string(i));
            if (m.exp[i] > 1) os << "^" << m.exp[i];
            wrote = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- Vec

Vec row_to_vec(const Row& row, std::uint32_t offset) {
    Vec v;
    for (std::size_t j = 0; j < row.size(); ++j)
        for (const auto& [m, c] : row[j].terms())
            v.push_back(Term{static_cast<std::uint32_t>(j + offset), m, c});
    // Rows are already grouped by component with decreasing monomials.
    return v;
}

Row vec_to_row(const Vec& v, std::size_t width, std::uint32_t offset) {
    std::vector<std::vector<Poly::TermT>> parts(width);
    for (const auto& t : v) {
        if (t.comp < offset || t.comp >= offset + width) continue;
        parts[t.comp - offset].emplace_back(t.mono, t.coeff);
    }
    Row row(width);
    for (std::size_t j = 0; j < width; ++j) row[j] = Poly::from_terms(std::move(parts[j]));
    return row;
}

void vec_normalize(Vec& v, const Domain& dom) {
    std::size_t k = 0;
    for (auto& t : v) {
        dom.normalize(t.coeff);
        if (t.coeff != 0) v[k++] = std::move(t);
    }
    v.resize(k);
}

void vec_sub_mul(Vec& f, const mpz_class& fscale, const mpz_class& a, const Monomial& m, const Vec& g,
                 const Domain& dom) {
    Vec out;
    out.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    mpz_class tmp;
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
            tmp = f[i].coeff * fscale;
            dom.normalize(tmp);
            if (tmp != 0) out.push_back(Term{f[i].comp, f[i].mono, tmp});
            ++i;
        } else if (c < 0) {
            tmp = -(a * g[j].coeff);
            dom.normalize(tmp);
            if (tmp != 0) out.push_back(Term{g[j].comp, gm, tmp});
            ++j;
        } else {
            tmp = f[i].coeff * fscale - a * g[j].coeff;
            dom.normalize(tmp);
            if (tmp != 0) out.push_back(Term{f[i].comp, f[i].mono, tmp});
            ++i;
            ++j;
        }
    }
    f = std::move(out);
}

void vec_make_primitive(Vec& v, const Domain& dom) {
    if (v.empty()) return;
    if (dom.is_field()) {
        mpz_class inv = dom.inverse_mod_p(v.front().coeff);
        for (auto& t : v) {
            t.coeff *= inv;
            dom.normalize(t.coeff);
        }
        return;
    }
    mpz_class g = 0;
    for (const auto& t : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    g = dom.unit_part(g);
    if (v.front().coeff < 0) g = -g;
    if (g != 1)
        for (auto& t : v) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
}

std::vector<std::string> b_names(std::size_t r) {
    std::vector<std::string> n;
    for (std::size_t i = 1; i <= r; ++i) n.push_back("b" + std::to_string(i));
    return n;
}

std::vector<std::string> x_names(std::size_t count) {
    std::vector<std::string> n;
    for (std::size_t i = 0; i < count; ++i) n.push_back("X" + std::to_string(i));
    return n;
}

}  // namespace iwalg
