#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "iwalg/graded.hpp"
#include "iwalg/poly.hpp"

namespace iwalg {

enum class RingMode { abelian, rules };
/// Z_p-coefficients (Λ) or F_p-coefficients (Λ/p = F_p[[b]]).
enum class Coefficients { padic, residue };

struct Precision {
    int a = 4;  ///< coefficients known modulo p^a
    int N = 8;  ///< b-degree bound
    bool operator==(const Precision& o) const { return a == o.a && N == o.N; }
    Precision meet(const Precision& o) const { return {std::min(a, o.a), std::min(N, o.N)}; }
    Precision escalated(int steps = 1) const { return {a + steps, N + 2 * steps}; }
};

class RingContext;
using Ring = std::shared_ptr<const RingContext>;

/// A concrete Iwasawa algebra: Z_p[[b_1..b_r]] (abelian mode), its reduction
/// mod p, or a rule-presented algebra where b_j b_i = b_i b_j + h_ij for j > i.
class RingContext {
public:
    static Ring abelian(long p, int r, Precision prec = {}, int max_escalations = 3);
    /// Λ/p = F_p[[b_1..b_r]]; homological dimension r.
    static Ring residue_field_algebra(long p, int r, Precision prec = {}, int max_escalations = 3);
    /// Rules keyed by (j, i), j > i, 1-based; entries are integer polynomials in b_1..b_r.
    static Ring with_rules(long p, int r, std::map<std::pair<int, int>, Poly> rules, Precision prec = {},
                           int max_escalations = 3);
    /// Coordinates x_1 = 1+p²E12, x_2 = 1+p²E23, x_3 = 1+p²E13 of a congruence subgroup
    /// of the Heisenberg group; the corrections are derived from matrix products.
    static Ring congruence_heisenberg(long p, Precision prec = {4, 6}, int max_escalations = 3);

    long p() const { return p_; }
    int r() const { return r_; }
    int d() const { return coeffs_ == Coefficients::padic ? r_ + 1 : r_; }
    RingMode mode() const { return mode_; }
    Coefficients coefficients() const { return coeffs_; }
    bool is_heisenberg() const { return heisenberg_; }
    Precision default_precision() const { return prec_; }
    int max_escalations() const { return max_escalations_; }
    /// Exact polynomial corrections h_ij (j > i); absent pairs commute.
    const std::map<std::pair<int, int>, Poly>& rules() const { return rules_; }
    Domain exact_domain() const { return coeffs_ == Coefficients::padic ? Domain::padic(p_) : Domain::residue(p_); }

    bool same_algebra(const RingContext& o) const;
    std::string describe() const;

    /// Variant with another default precision / escalation limit.
    Ring with_precision(Precision prec, int max_escalations) const;
    /// Same kind of algebra in more variables (abelian only).
    Ring with_vars(int r) const;

private:
    RingContext() = default;
    long p_ = 3;
    int r_ = 1;
    RingMode mode_ = RingMode::abelian;
    Coefficients coeffs_ = Coefficients::padic;
    bool heisenberg_ = false;
    Precision prec_;
    int max_escalations_ = 3;
    std::map<std::pair<int, int>, Poly> rules_;
};

bool is_odd_prime(long p);
/// min over terms of |α| + v_p(c); kPlusInfinity for zero.
int exact_valuation(const Poly& f, long p);

struct Valuation {
    int value = kPlusInfinity;
    bool is_bound = false;  ///< true when truncation could hide smaller terms
};

/// Truncated element of Λ. Terms are kept sorted in decreasing degrevlex
/// order; coefficients are in [0, p^a). In rules mode monomials denote the
/// ordered products b_1^α1 ⋯ b_r^αr.
class Element {
public:
    using Coeff = std::int64_t;
    using TermT = std::pair<Monomial, Coeff>;

    Element(Ring ring, Precision prec);
    static Element constant(Ring ring, Precision prec, long long c);
    /// b_i, 1-based.
    static Element generator(Ring ring, Precision prec, int i);
    static Element from_poly(Ring ring, Precision prec, const Poly& f);
    static Element from_terms(Ring ring, Precision prec, std::vector<TermT> terms);

    const Ring& ring() const { return ring_; }
    Precision precision() const { return prec_; }
    const std::vector<TermT>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    Valuation v_M() const;
    /// Leading form in F_p[X_0..X_r]; throws ErrorKind::precision when v_M is only a bound.
    GradedPoly symbol() const;
    /// Image under b_i ↦ (1+b_i)^{-1} − 1 (abelian mode).
    Element involution() const;
    /// Re-truncate to a coarser precision.
    Element truncated(Precision prec) const;
    Poly to_poly() const;
    std::string to_string() const;

private:
    Ring ring_;
    Precision prec_;
    std::vector<TermT> terms_;
};

Element elem_add(const Element& x, const Element& y);
Element elem_mul(const Element& x, const Element& y);

struct ValidationReport {
    bool valid = true;
    int checks = 0;
    std::vector<std::string> failures;
};

/// Associativity on generator triples and random triples, distributivity on
/// random triples, and v_M(h_ij) ≥ 3.
ValidationReport validate_ring(const Ring& ring, Precision prec, int samples, std::uint64_t seed = 1);

/// Random element with up to `max_terms` terms of degree ≤ `max_degree`.
Element random_element(const Ring& ring, Precision prec, std::mt19937_64& rng, int max_terms = 3, int max_degree = 2);

namespace heisenberg {

/// 3×3 integer matrix, row-major.
using Mat3 = std::array<mpz_class, 9>;

Mat3 identity();
/// x_i (i = 1,2,3) or its inverse.
Mat3 generator(long p, int i, bool inverse);
Mat3 multiply(const Mat3& x, const Mat3& y, const mpz_class& modulus);
/// Exponents (t1, t2, t3) with g = x_1^t1 x_2^t2 x_3^t3, as balanced residues.
std::array<mpz_class, 3> coordinates(const Mat3& g, long p, const mpz_class& modulus);
/// The element x_1^t1 x_2^t2 x_3^t3 = Π_i Σ_k C(t_i, k) b_i^k, truncated.
Element expand(const Ring& ring, Precision prec, const std::array<mpz_class, 3>& t);

}  // namespace heisenberg

}  // namespace iwalg
