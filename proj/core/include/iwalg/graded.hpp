#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iwalg/poly.hpp"

namespace iwalg {

/// Sentinels for the dimension of the zero module and the grade of the zero module.
inline constexpr int kMinusInfinity = -1000000;
inline constexpr int kPlusInfinity = 1000000;

/// Element of gr(Λ) = F_p[X_0, ..., X_r]; variable index 0 is X_0, the symbol of p.
using GradedPoly = Poly;

/// The one order used on gr(Λ)-modules: degrevlex on X_0..X_r, position over
/// term with component 0 of highest priority. Kept as a type so callers can
/// state which order a basis refers to.
struct MonomialOrder {
    static MonomialOrder degrevlex_pot() { return {}; }
    int compare(std::uint32_t ca, const Monomial& ma, std::uint32_t cb, const Monomial& mb) const {
        return term_cmp(ca, ma, cb, mb);
    }
};

/// Submodule of the free module F_p[X_0..X_{nvars-1}]^rank.
class GradedSubmodule {
public:
    GradedSubmodule(long p, std::size_t nvars, std::size_t rank, Matrix generators = {});

    long p() const { return p_; }
    std::size_t nvars() const { return nvars_; }
    std::size_t rank() const { return rank_; }
    const Matrix& generators() const { return gens_; }
    bool has_basis() const { return basis_.has_value(); }
    /// Reduced Gröbner basis; empty optional until groebner() was applied.
    const std::optional<std::vector<Vec>>& basis() const { return basis_; }
    Domain domain() const { return Domain::residue(p_); }

    /// Lead terms of the basis, as monomial vectors (coefficient 1).
    std::vector<Vec> leading_terms() const;

    std::string to_string() const;

private:
    friend GradedSubmodule groebner(const GradedSubmodule&, MonomialOrder);
    long p_;
    std::size_t nvars_;
    std::size_t rank_;
    Matrix gens_;
    std::optional<std::vector<Vec>> basis_;
};

GradedSubmodule groebner(const GradedSubmodule& s, MonomialOrder ord = MonomialOrder::degrevlex_pot());

/// Remainder of v modulo the submodule (basis required). Zero iff v is a member.
Row normal_form(const Row& v, const GradedSubmodule& g);

/// Krull dimension of the quotient F^rank / S, computed from the lead-term
/// module: the maximum over components of the largest set of variables
/// independent modulo that component's monomial ideal. kMinusInfinity for
/// the zero quotient.
int krull_dim(const GradedSubmodule& s);

/// Krull dimension of F[X_0..X_{nvars-1}]^rank / (monomial module). The
/// monomial module is given by its generators as (component, monomial).
int monomial_quotient_dim(std::size_t nvars, std::size_t rank, const std::vector<std::pair<std::uint32_t, Monomial>>& gens);

/// F_p-dimension of F^rank / (monomial module) when finite, by staircase counting.
std::optional<std::size_t> monomial_quotient_length(std::size_t nvars, std::size_t rank,
                                                    const std::vector<std::pair<std::uint32_t, Monomial>>& gens);

/// Rank over the fraction field of a matrix with entries in F_p[vars]
/// (rows are vectors). Computed from the position-over-term Gröbner basis of
/// the row module.
std::size_t graded_rank(const Matrix& a, long p);

}  // namespace iwalg
