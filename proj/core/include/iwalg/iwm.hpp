#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iwalg/presentation.hpp"

namespace iwalg {

/// Line-oriented module description:
///
///     # comment
///     ring p=3 vars=2 mode=abelian          (or: ring p=3 preset=congruence-heisenberg)
///     prec a=4 N=8
///     rule 2 1 : p^3*b1                     (rules mode only: h_21)
///     module M rank=2
///     rel : [p^2 + 2*b1*b2, b2]
///
/// Entries are polynomials in p, b1..br built from nonnegative integers, +, *, ^
/// and parentheses; '-' is accepted as well.
struct IwmModule {
    std::string name;
    std::size_t rank = 0;
    Matrix rels;
    int line = 0;
};

struct IwmDocument {
    long p = 0;
    int vars = 0;
    RingMode mode = RingMode::abelian;
    std::string preset;  ///< empty, or "congruence-heisenberg"
    std::optional<Precision> prec;
    std::map<std::pair<int, int>, Poly> rules;
    std::vector<IwmModule> modules;

    Precision precision() const { return prec.value_or(Precision{}); }
    Ring make_ring(Precision prec, int max_escalations) const;
    Presentation presentation(const IwmModule& m, const Ring& ring, Precision prec) const;
    const IwmModule& module(const std::string& name) const;
};

/// Throws ParseError (syntax, with line and column) or Error(validation).
IwmDocument parse_iwm(std::string_view text);

/// Canonical text; parse_iwm(print_iwm(doc)) reproduces doc.
std::string print_iwm(const IwmDocument& doc);

/// One-module document for a presentation over an abelian or rule-presented ring.
IwmDocument to_document(const Presentation& m, const std::string& name);

}  // namespace iwalg
