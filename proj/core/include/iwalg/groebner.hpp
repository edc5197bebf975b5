#pragma once

#include <cstdint>
#include <vector>

#include "iwalg/poly.hpp"

namespace iwalg {

/// Strong Gröbner basis of the submodule generated by `gens` in a free module
/// over dom[vars], position-over-term / degrevlex. Over Z_(p) a lead term
/// c*m*e_j divides another iff the monomial divides and v_p(c) is not larger,
/// so S-polynomials suffice (no gcd-polynomials are needed over a valuation
/// ring). Pair selection is the normal strategy with insertion-order
/// tie-breaks, so the output is deterministic.
std::vector<Vec> groebner_basis(const std::vector<Vec>& gens, const Domain& dom, bool reduce_tails = true);

/// Fully reduced remainder of f modulo a Gröbner basis. Over Z_(p) the
/// remainder is determined up to a p-unit factor; it is zero iff f lies in
/// the submodule.
Vec normal_form(Vec f, const std::vector<Vec>& basis, const Domain& dom);

bool reduces_to_zero(const Vec& f, const std::vector<Vec>& basis, const Domain& dom);

/// Generators of the module of syzygies {c in R^m : sum c_i gens_i = 0},
/// returned as vectors in a free module of rank gens.size().
std::vector<Vec> syzygies(const std::vector<Vec>& gens, std::uint32_t rank, const Domain& dom);

/// Number of distinct lead components of a position-over-term Gröbner basis:
/// the rank of the submodule over the fraction field.
std::size_t lead_component_count(const std::vector<Vec>& basis);

}  // namespace iwalg
