#pragma once

#include <initializer_list>
#include <string>

#include "iwalg/error.hpp"
#include "iwalg/iwm.hpp"
#include "iwalg/report.hpp"
#include "iwalg/verify.hpp"

namespace iwt {

using namespace iwalg;

inline const Precision kPrec{4, 8};

/// b_i (1-based), optionally to a power.
inline Poly b(int i, int k = 1) {
    return Poly::monomial(Monomial::var(static_cast<std::size_t>(i - 1), static_cast<std::uint16_t>(k)));
}
inline Poly c(long v) { return Poly::constant(v); }

inline Ring lambda(int r, long p = 3) { return RingContext::abelian(p, r, kPrec); }

/// Λ / (f_1, ..., f_k) as a cyclic module.
inline Presentation cyclic(const Ring& ring, std::initializer_list<Poly> gens) {
    Matrix rels;
    for (const auto& f : gens) rels.push_back(Row{f});
    return Presentation::make(ring, kPrec, 1, std::move(rels));
}

inline Presentation module(const Ring& ring, std::size_t rank, Matrix rels) {
    return Presentation::make(ring, kPrec, rank, std::move(rels));
}

inline Presentation free_module(const Ring& ring, std::size_t rank) { return Presentation::free(ring, kPrec, rank); }

}  // namespace iwt
