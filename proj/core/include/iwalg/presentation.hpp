#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwalg/poly.hpp"
#include "iwalg/ring.hpp"

namespace iwalg {

/// Finitely presented module Λ^rank / (row span of rels). Entries are exact
/// polynomials in b_1..b_r (integer coefficients, or mod p over a residue
/// ring); the precision is the working precision of the truncated routes.
struct Presentation {
    Ring ring;
    Precision prec;
    std::size_t rank = 0;
    Matrix rels;
    std::string label;

    static Presentation make(Ring ring, Precision prec, std::size_t rank, Matrix rels, std::string label = "");
    /// The free module Λ^rank.
    static Presentation free(Ring ring, Precision prec, std::size_t rank, std::string label = "");

    Domain domain() const { return ring->exact_domain(); }
    std::vector<std::vector<Element>> row_elements() const;
    /// Same relations, read in another ring with at least as many variables.
    Presentation over(Ring other) const;
    std::string to_string() const;
};

/// Map of presentations: row i of `images` is the image of source generator i,
/// written in target generators.
struct ModuleMap {
    Presentation source;
    Presentation target;
    Matrix images;

    /// Each source relation maps into the target relation module (locally).
    bool well_defined() const;
};

/// Local algebra over A = P_(p,b), P = Z_(p)[b] (or F_p[b]), on exact data.
namespace local {

bool is_unit(const Poly& f, const Domain& dom);
/// Rank over k = F_p of the constant-term matrix.
std::size_t rank_mod_m(const Matrix& rows, std::size_t ncols, const Domain& dom);
/// Indices of rows forming a basis of the row span mod m (greedy, in order).
std::vector<std::size_t> independent_rows_mod_m(const Matrix& rows, std::size_t ncols, const Domain& dom);
/// Generators of {c : Σ c_i rows_i = 0} over P; rows of length rows.size().
Matrix syz(const Matrix& rows, std::size_t ncols, const Domain& dom);
/// Drop rows that are redundant locally (Nakayama), given the syzygies of `rows`.
std::vector<std::size_t> essential_rows(const Matrix& rows, const Matrix& syzygies, const Domain& dom);
/// Locally minimal generating subset of the row module.
Matrix minimalize(const Matrix& rows, std::size_t ncols, const Domain& dom);
/// u·y = Σ c_i gens_i with u a unit of A, if y lies in the local span of gens.
std::optional<std::pair<Poly, Row>> lift(const Matrix& gens, const Row& y, std::size_t ncols, const Domain& dom);
bool contains(const Matrix& gens, const Row& y, std::size_t ncols, const Domain& dom);
/// Rank over the fraction field of P (or of F_p[b] for residue rings).
std::size_t generic_rank(const Matrix& rows, std::size_t ncols, const Domain& dom);

Matrix transpose(const Matrix& m, std::size_t ncols);
/// a (k×n) times b (n×m).
Matrix multiply(const Matrix& a, const Matrix& b, std::size_t ncols_b, const Domain& dom);
Row row_times(const Row& x, const Matrix& b, std::size_t ncols_b, const Domain& dom);
Matrix identity(std::size_t n);
Matrix normalized(const Matrix& m, const Domain& dom);
bool is_zero_matrix(const Matrix& m);

}  // namespace local

/// Generators `gens` modulo `rels` (both rows in the same free module):
/// presentation of (span gens + span rels) / span rels on the given generators.
Presentation subquotient(const Ring& ring, Precision prec, const Matrix& gens, const Matrix& rels, std::size_t ncols);

Presentation kernel(const ModuleMap& f);
Presentation image(const ModuleMap& f);
Presentation coker(const ModuleMap& f);
Presentation direct_sum(const Presentation& m, const Presentation& n);
Presentation quotient(const Presentation& m, const Matrix& extra_rels);

struct Simplified {
    Presentation pres;
    /// Original generator indices kept, in order; the remaining generators are
    /// local combinations of these.
    std::vector<std::size_t> kept;
};

/// Nakayama normalization: eliminates unit entries and redundant relations,
/// so the generator count equals dim_k M/MM and the relations are locally minimal.
Simplified simplify_with_map(const Presentation& m);
Presentation simplify(const Presentation& m);

bool is_zero(const Presentation& m);
std::size_t min_generators(const Presentation& m);

/// Throws unsupported_mode for rule-presented rings.
void require_commutative(const Ring& ring, const char* what);

}  // namespace iwalg
