#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwalg/graded.hpp"
#include "iwalg/presentation.hpp"
#include "iwalg/ring.hpp"

namespace iwalg {

enum class Certification { certified, heuristic };
const char* to_string(Certification c);

/// Standard basis of the row span of a presentation, computed on Λ^n / M^D Λ^n
/// with D = min(a, N): every M-adic leading form of degree < D of an element
/// of the span has its leading monomial in the module generated by `leads`.
struct StandardBasis {
    Presentation pres;
    int D = 0;
    /// Basis vectors (rows of elements at precision (D, D)).
    std::vector<std::vector<Element>> basis;
    /// Lead monomials X_0^s X^α e_j of the basis vectors.
    std::vector<std::pair<std::uint32_t, Monomial>> leads;
    GradedSubmodule leading;
};

StandardBasis standard_basis(const Presentation& rows, Precision prec);

/// Graded presentation F_p[X_0..X_r]^n / (leading-term module) of gr(M).
/// For residue rings X_0 is killed as well.
GradedSubmodule gr_module(const Presentation& m, Precision prec);

/// `prec` raised so that the truncation degree exceeds the M-adic order of
/// every relation by at least 2; below that a relation can vanish entirely.
Precision gr_working_precision(const Presentation& m, Precision prec);

/// δ via gr at a fixed precision; kMinusInfinity for the zero module.
int gr_dimension(const Presentation& m, Precision prec);

/// F_p-length of M via the staircase of gr(M), when it is finite and every
/// standard monomial has degree below the truncation bound.
std::optional<std::size_t> gr_length(const Presentation& m, Precision prec);

template <class T>
struct Certified {
    T value{};
    Certification status = Certification::certified;
    int escalations = 0;
    Precision precision;
    /// Values seen at each precision tried, in order.
    std::vector<T> history;
};

/// Runs `task` at prec, prec+1, ... (a+1, N+2 per step) until two consecutive
/// values agree, escalating at most `max_escalations` times.
template <class T>
Certified<T> certify(const std::function<T(Precision)>& task, Precision prec, int max_escalations) {
    Certified<T> out;
    Precision cur = prec;
    T prev = task(cur);
    out.history.push_back(prev);
    for (int k = 0; k <= max_escalations; ++k) {
        Precision next = cur.escalated();
        T v = task(next);
        out.history.push_back(v);
        if (v == prev) {
            out.value = prev;
            out.status = Certification::certified;
            out.escalations = k;
            out.precision = cur;
            return out;
        }
        prev = v;
        cur = next;
    }
    out.value = prev;
    out.status = Certification::heuristic;
    out.escalations = max_escalations;
    out.precision = cur;
    return out;
}

}  // namespace iwalg
