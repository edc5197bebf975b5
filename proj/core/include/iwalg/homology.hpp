#pragma once

#include <cstddef>
#include <vector>

#include "iwalg/presentation.hpp"

namespace iwalg {

/// F_ℓ → … → F_1 → F_0 → M → 0; maps[i-1] is φ_i as a d_i × d_{i-1} matrix
/// whose rows are the images of the basis of F_i.
struct Resolution {
    Presentation target;
    std::vector<std::size_t> ranks;
    std::vector<Matrix> maps;
    bool minimal = true;
    /// True when the last computed kernel vanished, so ranks is the full Betti vector.
    bool complete = false;

    std::size_t length() const { return maps.size(); }
    const Matrix& map(std::size_t i) const { return maps.at(i - 1); }
};

/// Minimal free resolution of the simplified module, to `length` maps (or to
/// the end when length < 0).
Resolution minimal_free_resolution(const Presentation& m, int length = -1);

struct ExtResult {
    int i = 0;
    Presentation module;
    /// Generators of ker(φ_{i+1}^+) in F_i^+, before simplification.
    Matrix cocycles;
};

/// E^i(M) = Ext^i(M, Λ) from a resolution of M (extended as needed).
ExtResult ext(const Resolution& res, int i);
ExtResult ext(const Presentation& m, int i);

/// dim_k Tor_i(M, k) and dim_k Ext^i(M, k): both are the Betti number d_i.
std::size_t tor_k(const Resolution& res, int i);
std::size_t ext_k(const Resolution& res, int i);

Presentation transpose(const Presentation& m);
Presentation loop(const Presentation& m);
Presentation dual(const Presentation& m);

struct BidualData {
    Presentation module;    ///< simplified M
    Presentation dual;      ///< M^+ on the generators of ker φ_1^+
    Presentation bidual;    ///< M^{++}
    Presentation kernel;    ///< ker φ_M
    Presentation cokernel;  ///< coker φ_M
};

/// The natural map φ_M: M → M^{++}, through its kernel and cokernel.
BidualData bidual_map(const Presentation& m);

struct CanonicalSequence {
    BidualData phi;
    Presentation e1d;  ///< E^1(DM)
    Presentation e2d;  ///< E^2(DM)
};

/// 0 → E^1DM → M → M^{++} → E^2DM → 0.
CanonicalSequence canonical_sequence(const Presentation& m);

struct NaturalMapData {
    Presentation module;  ///< simplified M
    Presentation target;  ///< E^cE^c(M)
    Presentation kernel;
    Presentation cokernel;
};

/// The natural map M → E^cE^c(M), defined when E^i(M) = 0 for i < c.
NaturalMapData double_dual_map(const Presentation& m, int c);

/// dim_k H_i(K(p, b_1..b_r) ⊗ M), Koszul homology; equals dim_k Tor_i(M, k).
std::size_t koszul_tor(const Presentation& m, int i);
/// dim_k H^i(Hom(K(p, b_1..b_r), M)) = dim_k Ext^i(k, M).
std::size_t koszul_ext_from_k(const Presentation& m, int i);

/// The residue field k as a module: Λ/(p, b_1..b_r), or Ω/(b) over a residue ring.
Presentation residue_field(const Ring& ring, Precision prec);

}  // namespace iwalg
