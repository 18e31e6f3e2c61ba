#pragma once

#include "qmcoh/cochain.hpp"
#include "qmcoh/cohomology.hpp"
#include "qmcoh/group.hpp"
#include "qmcoh/quasimonoidal.hpp"

#include <string>
#include <vector>

namespace qmcoh {

/// Catalog groups of order <= max_order, ascending by order.
std::vector<FiniteGroup> default_cover_catalog(int max_order = 16);

struct CoverSearch {
    GroupHom hom;
    /// One line per candidate cover examined, in search order.
    std::vector<std::string> diagnostics;
    std::size_t surjections_tested = 0;
};

/// First surjection p (covers by ascending order, then surjections in
/// lexicographic order) with p*nu a coboundary; the identity of G if nu is
/// already one. Throws ExhaustionError with the diagnostics otherwise.
CoverSearch find_cover(const FiniteGroup& g, const Cochain& nu, const std::vector<FiniteGroup>& catalog);

enum class PrimitiveRoute {
    automatic,          // rational lift when d: C^4 -> C^5 on the cover fits the budget
    rational_lift,
    bounded_denominator,
};

/// psi in C^3(cover, Q/Z) with d(psi) = p*nu exactly. Throws InputError when
/// p*nu is not a coboundary.
Cochain solve_primitive(const GroupHom& p, const Cochain& nu, PrimitiveRoute route = PrimitiveRoute::automatic);

struct Realization {
    QuasiMonoidalSkeleton skeleton;
    CoverSearch search;
};

/// Skeleton whose pentagon defect has class omega (checked before
/// returning).
Realization realize(const CohomologyGroup& h4, const ClassCoordinates& omega, const std::vector<FiniteGroup>& catalog,
                    PrimitiveRoute route = PrimitiveRoute::automatic);

} // namespace qmcoh
