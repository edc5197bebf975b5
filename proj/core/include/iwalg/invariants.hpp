#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iwalg/homology.hpp"
#include "iwalg/sbasis.hpp"

namespace iwalg {

/// δ(M) via gr(M), certified by precision escalation; kMinusInfinity for M = 0.
Certified<int> delta(const Presentation& m);
/// j(M) = d − δ(M) via gr; kPlusInfinity for M = 0.
Certified<int> grade(const Presentation& m);
/// min{i : E^i(M) ≠ 0}; kPlusInfinity for M = 0.
int grade_via_ext(const Presentation& m);

struct PdRoutes {
    int betti = 0;   ///< max{i : d_i ≠ 0}
    int ext = 0;     ///< max{i : E^i(M) ≠ 0}
    int koszul = 0;  ///< max{i : dim_k Tor_i(M,k) ≠ 0} from the Koszul complex
    bool agree() const { return betti == ext && ext == koszul; }
};
PdRoutes pd_routes(const Presentation& m);
int pd(const Presentation& m);
/// min{i : Ext^i(k, M) ≠ 0} via Hom(Koszul, M); kPlusInfinity for M = 0.
int depth(const Presentation& m);

struct RankValue {
    int value = 0;
    bool heuristic = false;
};
RankValue rank(const Presentation& m);

bool is_pseudo_null(const Presentation& m);
bool is_torsion(const Presentation& m);
bool is_torsion_free(const Presentation& m);
bool is_reflexive(const Presentation& m);
bool is_cohen_macaulay(const Presentation& m);

struct MuReport {
    int mu = 0;
    std::vector<int> chain;  ///< d_j = rk_{Λ/p}(_{p^{j+1}}M / _{p^j}M)
    bool non_increasing = true;
};
MuReport mu(const Presentation& m);

struct DecompositionReport {
    std::vector<int> exponents;  ///< sorted ascending
    int mu = 0;
    bool consistent = true;  ///< Σ n_i = μ and #{n_i ≥ j+1} = d_j
    std::vector<int> chain;
};
/// Rejects (ErrorKind::precision) when some exponent reaches the precision a.
DecompositionReport decompose_p_torsion(const Presentation& m);

/// Invariants used to compare modules that should be isomorphic.
struct Profile {
    bool zero = true;
    int delta = kMinusInfinity;
    int j = kPlusInfinity;
    int mu = 0;
    std::vector<std::size_t> betti;
    bool operator==(const Profile& o) const {
        return zero == o.zero && delta == o.delta && j == o.j && mu == o.mu && betti == o.betti;
    }
    bool operator!=(const Profile& o) const { return !(*this == o); }
    std::string to_string() const;
};
/// Exact profile: δ = d − j with j from Ext, μ and Betti numbers.
Profile profile(const Presentation& m);

struct FiltrationLevel {
    int i = 0;
    Presentation recursive;  ///< T_i from the recursion on abstract modules
    Matrix generators;       ///< T_i as a submodule of M (rows in M's ambient free module)
    Presentation realized;   ///< subquotient(generators, relations of M)
    Profile recursive_profile;
    Profile realized_profile;
    bool agree = false;
    int delta = kMinusInfinity;  ///< δ(T_i), exact route
    bool pure_step = true;       ///< T_i/T_{i-1} is zero or pure of dimension i
};

struct FiltrationReport {
    Presentation module;  ///< simplified M
    std::vector<FiltrationLevel> levels;  ///< i = 0..d
    bool t0_matches_edd = false;  ///< T_0 ≅ E^dE^d(M) on profiles
    bool consistent() const;
};
FiltrationReport dimension_filtration(const Presentation& m);

/// T_i(M) as a submodule of the simplified M: generators in its ambient free module.
Matrix torsion_submodule_level(const Presentation& simplified, int i);

struct InvariantReport {
    bool zero = false;
    Certified<int> delta;
    Certified<int> j;
    std::optional<int> j_ext;
    std::optional<PdRoutes> pd;
    std::optional<int> depth;
    RankValue rank;
    std::optional<std::vector<std::size_t>> betti;
    std::optional<MuReport> mu;
    bool is_torsion = false;
    std::optional<bool> is_torsion_free;
    bool is_pseudo_null = false;
    std::optional<bool> is_reflexive;
    std::optional<bool> is_cohen_macaulay;
    std::optional<std::vector<int>> ext_support;
    Certification certification = Certification::certified;
    int escalations = 0;
};
/// Full report; homological fields are left empty for rule-presented rings.
InvariantReport invariants(const Presentation& m);

}  // namespace iwalg
