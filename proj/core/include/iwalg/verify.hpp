#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iwalg/invariants.hpp"

namespace iwalg {

struct Witness {
    std::string ring;
    std::string module;
    Precision prec;
    std::uint64_t seed = 0;
    std::string trace;
};

struct AuditReport {
    std::string check;
    int instances = 0;
    int passed = 0;
    int failed = 0;
    int heuristic = 0;  ///< instances that relied on a heuristic-flagged value
    int skipped = 0;    ///< instances abandoned after exceeding a step budget
    std::optional<Witness> witness;
    std::vector<std::string> notes;

    bool ok() const { return failed == 0 && heuristic == 0; }
    void record(bool pass, const Presentation* m, std::uint64_t seed, const std::string& trace);
    void merge(const AuditReport& other);
};

/// For every m with E^m(M) ≠ 0, samples `trials` cyclic submodules N of E^m(M)
/// and checks j(N) ≥ m.
AuditReport auslander_spotcheck(const Presentation& m, int trials, std::uint64_t seed);

/// Finite-length M (others are rejected with ErrorKind::validation): E^i(M) = 0 for i < d, dim E^d(M) = dim M, and M → E^dE^d(M) bijective.
AuditReport local_duality_finite(const Presentation& m);

/// M over Λ(Z_p^s) induced to Λ(Z_p^r): j and pd preserved, δ shifted by r − s.
AuditReport induction_check(const Presentation& m, int r);

/// Λ(G)/(f, b_{s+1}) over G = Z_p^{s+1} is pseudo-null for f ≠ 0 in Λ(Z_p^s).
AuditReport torsion_pseudonull_check(const Ring& h, const Poly& f, Precision prec);

/// Random words in x_i^{±1}: ring multiplication against 3×3 matrices over Z/p^{a+4}.
AuditReport matrix_oracle_check(const Ring& ring, Precision prec, int trials, std::uint64_t seed, int word_length = 4);

/// symbol(xy) = symbol(x)symbol(y) on random pairs with certain valuations.
AuditReport symbol_multiplicativity(const Ring& ring, Precision prec, int pairs, std::uint64_t seed);

/// For a Λ/p-module M: E^i over Λ/p and E^{i+1} over Λ have equal profiles.
AuditReport change_of_rings_check(const Presentation& m);

/// Torsion M: M → E^1E^1(M) has kernel and cokernel of δ ≤ d−2.
AuditReport pseudo_iso_e1_check(const Presentation& m);

/// E^1(M) and E^1(tor M) agree in (δ, j, μ).
AuditReport e1_torsion_check(const Presentation& m);

/// T_i(N) = T_i(M) ∩ N for an injection f: N → M, i = 0..d. The target must be
/// simplified; a non-injective f is rejected.
AuditReport left_exactness_check(const ModuleMap& f);
/// The summand inclusion A → A ⊕ B.
AuditReport left_exactness_check(const Presentation& a, const Presentation& b);

struct CorpusConfig {
    long p = 3;
    std::vector<int> ranks{1, 2};
    int max_gens = 3;
    int max_rels = 4;
    int max_degree = 2;
    int count = 50;
    Precision prec{4, 8};
    int max_escalations = 3;
};

/// `count` nonzero random presentations, deterministic per seed.
std::vector<Presentation> random_corpus(const CorpusConfig& cfg, std::uint64_t seed);

/// Row and column operations by random invertible matrices; the module is unchanged.
Presentation scramble(const Presentation& m, std::mt19937_64& rng);

/// Dimension identity, pd agreement, Auslander–Buchsbaum and the Auslander
/// condition on a random corpus. Candidates whose exact computations exceed a
/// step budget are counted as skipped and replaced by further draws until
/// cfg.count modules have been checked (at most 4 * cfg.count draws).
std::vector<AuditReport> corpus_run(const CorpusConfig& cfg, std::uint64_t seed, int auslander_trials = 8);

}  // namespace iwalg
