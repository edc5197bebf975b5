#include "iwalg/graded.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "iwalg/error.hpp"
#include "iwalg/groebner.hpp"

namespace iwalg {

GradedSubmodule::GradedSubmodule(long p, std::size_t nvars, std::size_t rank, Matrix generators)
    : p_(p), nvars_(nvars), rank_(rank), gens_(std::move(generators)) {
    if (nvars_ > kMaxVars) throw Error(ErrorKind::validation, "too many variables");
    Domain dom = domain();
    for (auto& row : gens_) {
        if (row.size() != rank_) throw Error(ErrorKind::validation, "generator length differs from ambient rank");
        for (auto& e : row) e = e.normalized(dom);
    }
}

std::vector<Vec> GradedSubmodule::leading_terms() const {
    std::vector<Vec> out;
    if (!basis_) return out;
    for (const auto& g : *basis_) out.push_back(Vec{Term{g.front().comp, g.front().mono, 1}});
    return out;
}

std::string GradedSubmodule::to_string() const {
    std::ostringstream os;
    auto names = x_names(nvars_);
    const Matrix* rows = &gens_;
    Matrix from_basis;
    if (basis_) {
        for (const auto& g : *basis_) from_basis.push_back(vec_to_row(g, rank_));
        rows = &from_basis;
    }
    os << "<";
    for (std::size_t i = 0; i < rows->size(); ++i) {
        if (i) os << ", ";
        if (rank_ == 1) {
            os << (*rows)[i][0].to_string(names);
            continue;
        }
        os << "(";
        for (std::size_t j = 0; j < rank_; ++j) os << (j ? ", " : "") << (*rows)[i][j].to_string(names);
        os << ")";
    }
    os << ">";
    return os.str();
}

GradedSubmodule groebner(const GradedSubmodule& s, MonomialOrder) {
    std::vector<Vec> gens;
    for (const auto& row : s.generators()) gens.push_back(row_to_vec(row));
    GradedSubmodule out = s;
    auto basis = groebner_basis(gens, s.domain(), true);
    // Sort by lead term (largest first) so bases are canonical.
    std::sort(basis.begin(), basis.end(), [](const Vec& a, const Vec& b) {
        return term_cmp(a.front().comp, a.front().mono, b.front().comp, b.front().mono) > 0;
    });
    out.basis_ = std::move(basis);
    return out;
}

Row normal_form(const Row& v, const GradedSubmodule& g) {
    if (!g.has_basis()) throw Error(ErrorKind::internal, "normal_form requires a Gröbner basis");
    Vec r = normal_form(row_to_vec(v), *g.basis(), g.domain());
    return vec_to_row(r, g.rank());
}

namespace {

int ideal_dim(std::size_t nvars, const std::vector<Monomial>& gens) {
    int best = -1;
    const int full = (1 << nvars) - 1;
    for (int mask = 0; mask <= full; ++mask) {
        int size = __builtin_popcount(static_cast<unsigned>(mask));
        if (size <= best) continue;
        bool independent = true;
        for (const auto& m : gens) {
            if ((m.support_mask() & ~mask) == 0) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;  // -1 when the ideal is the unit ideal
}

std::vector<std::vector<Monomial>> by_component(std::size_t rank,
                                                const std::vector<std::pair<std::uint32_t, Monomial>>& gens) {
    std::vector<std::vector<Monomial>> comp(rank);
    for (const auto& [c, m] : gens)
        if (c < rank) comp[c].push_back(m);
    return comp;
}

}  // namespace

int monomial_quotient_dim(std::size_t nvars, std::size_t rank, const std::vector<std::pair<std::uint32_t, Monomial>>& gens) {
    int best = kMinusInfinity;
    for (const auto& ideal : by_component(rank, gens)) {
        int d = ideal_dim(nvars, ideal);
        if (d >= 0) best = std::max(best, d);
    }
    return best;
}

std::optional<std::size_t> monomial_quotient_length(std::size_t nvars, std::size_t rank,
                                                    const std::vector<std::pair<std::uint32_t, Monomial>>& gens) {
    std::size_t total = 0;
    for (const auto& ideal : by_component(rank, gens)) {
        int d = ideal_dim(nvars, ideal);
        if (d < 0) continue;
        if (d > 0) return std::nullopt;
        // Zero-dimensional: every variable has a pure power in the ideal.
        std::array<std::uint16_t, kMaxVars> bound{};
        for (std::size_t v = 0; v < nvars; ++v) {
            std::uint16_t b = UINT16_MAX;
            for (const auto& m : ideal)
                if (m.support_mask() == (1 << v)) b = std::min<std::uint16_t>(b, m.exp[v]);
            bound[v] = b;
        }
        // Enumerate the box of exponents below the pure powers.
        Monomial cur;
        while (true) {
            bool in_ideal = false;
            for (const auto& m : ideal)
                if (m.divides(cur)) {
                    in_ideal = true;
                    break;
                }
            if (!in_ideal) ++total;
            std::size_t v = 0;
            for (; v < nvars; ++v) {
                if (cur.exp[v] + 1 < bound[v]) {
                    ++cur.exp[v];
                    ++cur.deg;
                    break;
                }
                cur.deg -= cur.exp[v];
                cur.exp[v] = 0;
            }
            if (v == nvars) break;
        }
    }
    return total;
}

int krull_dim(const GradedSubmodule& s) {
    GradedSubmodule g = s.has_basis() ? s : groebner(s);
    std::vector<std::pair<std::uint32_t, Monomial>> leads;
    for (const auto& v : *g.basis()) leads.emplace_back(v.front().comp, v.front().mono);
    return monomial_quotient_dim(g.nvars(), g.rank(), leads);
}

std::size_t graded_rank(const Matrix& a, long p) {
    Domain dom = Domain::residue(p);
    std::vector<Vec> rows;
    for (const auto& r : a) {
        Row n;
        for (const auto& e : r) n.push_back(e.normalized(dom));
        rows.push_back(row_to_vec(n));
    }
    return lead_component_count(groebner_basis(rows, dom, false));
}

}  // namespace iwalg
