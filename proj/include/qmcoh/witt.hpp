#pragma once

#include "qmcoh/cohomology.hpp"
#include "qmcoh/group.hpp"
#include "qmcoh/integer.hpp"
#include "qmcoh/quasimonoidal.hpp"

#include <map>
#include <string>

namespace qmcoh {

/// Element of the free abelian group on symbol names; zero exponents are
/// never stored.
using FreeWord = std::map<std::string, Integer>;

/// A Witt class over Rep(G) split as (W part, H^4 part).
struct WittElement {
    FiniteGroup base;
    std::vector<Integer> factors; // invariant factors of H^4(base, Q/Z)
    FreeWord w_part;
    ClassCoordinates h4_part;     // reduced modulo factors

    friend bool operator==(const WittElement& a, const WittElement& b) {
        return a.base.same_table(b.base) && a.factors == b.factors && a.w_part == b.w_part && a.h4_part == b.h4_part;
    }
};

WittElement witt_identity(const CohomologyGroup& h4);
/// Pure H^4 element; coordinates are padded and reduced.
WittElement h4_element(const CohomologyGroup& h4, std::vector<Integer> coords);

WittElement compose(const WittElement& x, const WittElement& y);
WittElement inverse(const WittElement& x);
/// n-fold composite, n >= 1.
WittElement power(const WittElement& x, const Integer& n);

FreeWord phi(const WittElement& x);
WittElement section_S(const FreeWord& w, const CohomologyGroup& h4);
ClassCoordinates eta(const WittElement& x);
bool admits_minimal_extension(const WittElement& x);
bool is_identity(const WittElement& x);

WittElement defect_to_witt(const PentagonDefect& d, const CohomologyGroup& h4);

/// Evaluates S(sym), H4(c1,...), x * y, inv(x), pow(x, n) and parentheses.
WittElement evaluate_witt_expression(const std::string& expr, const CohomologyGroup& h4);

/// "1" for the empty word, otherwise e.g. "a^2 * b^-1" in symbol order.
std::string format_word(const FreeWord& w);
std::string format_coordinates(const ClassCoordinates& c);

} // namespace qmcoh
