#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace iwalg {

inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector. Unused trailing variables stay zero, so monomials over
/// different variable counts compare consistently.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};
    std::uint32_t deg = 0;

    static Monomial one() { return {}; }
    static Monomial var(std::size_t i, std::uint16_t power = 1);

    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    /// this / other; requires other.divides(*this).
    Monomial operator/(const Monomial& other) const;
    Monomial lcm(const Monomial& other) const;
    bool operator==(const Monomial& other) const { return exp == other.exp; }
    bool operator!=(const Monomial& other) const { return exp != other.exp; }
    /// Bitmask of the variables with positive exponent.
    int support_mask() const;
};

/// Graded reverse lexicographic comparison: >0 if a > b.
int degrevlex_cmp(const Monomial& a, const Monomial& b);

/// Coefficient domain for exact computation: either the valuation ring Z_(p)
/// (integers standing for elements of Z_(p), p-units are units) or the field F_p.
class Domain {
public:
    static Domain padic(long p) { return Domain(p, false); }
    static Domain residue(long p) { return Domain(p, true); }

    long p() const { return p_; }
    bool is_field() const { return field_; }

    /// Canonical representative: reduced to [0, p) over F_p, untouched over Z_(p).
    void normalize(mpz_class& c) const;
    /// p-adic valuation of a nonzero coefficient (always 0 over F_p).
    int valuation(const mpz_class& c) const;
    bool is_unit(const mpz_class& c) const;
    /// c / p^{v_p(c)}.
    mpz_class unit_part(const mpz_class& c) const;
    mpz_class inverse_mod_p(const mpz_class& c) const;
    bool operator==(const Domain& o) const { return p_ == o.p_ && field_ == o.field_; }

private:
    Domain(long p, bool field) : p_(p), field_(field) {}
    long p_;
    bool field_;
};

/// Exact sparse polynomial with integer coefficients, terms sorted by
/// decreasing degrevlex order. Coefficients are interpreted in a Domain by
/// the algorithms that consume them.
class Poly {
public:
    using TermT = std::pair<Monomial, mpz_class>;

    Poly() = default;
    static Poly constant(const mpz_class& c);
    static Poly monomial(const Monomial& m, const mpz_class& c = 1);
    static Poly from_terms(std::vector<TermT> terms);

    const std::vector<TermT>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Coefficient of the constant monomial.
    mpz_class constant_term() const;
    int degree() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const mpz_class& c) const;
    Poly shifted(const Monomial& m) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Reduce coefficients into the domain's canonical form, dropping zeros.
    Poly normalized(const Domain& dom) const;

    /// Render with variable names, e.g. "2*b1^2*b2 + p". When p > 0, powers of
    /// p in coefficients are written with the symbol `p`.
    std::string to_string(const std::vector<std::string>& names, long p = 0) const;

private:
    std::vector<TermT> terms_;
};

using Row = std::vector<Poly>;
using Matrix = std::vector<Row>;

/// Module term: coefficient * monomial * e_comp.
struct Term {
    std::uint32_t comp = 0;
    Monomial mono;
    mpz_class coeff;
};

/// Position-over-term order (smaller component index is larger), degrevlex
/// inside a component. Returns >0 if a > b.
int term_cmp(std::uint32_t ca, const Monomial& ma, std::uint32_t cb, const Monomial& mb);

/// Sparse module vector, terms sorted decreasingly; front() is the lead term.
using Vec = std::vector<Term>;

Vec row_to_vec(const Row& row, std::uint32_t offset = 0);
Row vec_to_row(const Vec& v, std::size_t width, std::uint32_t offset = 0);

/// f <- fscale*f - a*m*g over the domain. Zero results are dropped.
void vec_sub_mul(Vec& f, const mpz_class& fscale, const mpz_class& a, const Monomial& m, const Vec& g,
                 const Domain& dom);
void vec_normalize(Vec& v, const Domain& dom);
/// Divide out the p-unit part of the content (Z_(p)) or make monic (F_p).
void vec_make_primitive(Vec& v, const Domain& dom);

/// Variable names: "b1".."br".
std::vector<std::string> b_names(std::size_t r);
/// Variable names: "X0".."Xr".
std::vector<std::string> x_names(std::size_t count);

mpz_class ipow(long base, unsigned e);

}  // namespace iwalg
