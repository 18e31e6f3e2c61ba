// Opposite skeletons over a base with order-3 classes, where inversion is
// visible in the coordinates. The order-27 cover needs a 26^4-row coboundary
// matrix, so QMCOH_SIZE_BUDGET is raised in the test registration.

#include "qmcoh/lift.hpp"

#include <doctest.h>

using namespace qmcoh;

TEST_CASE("opposite inverts order-3 classes") {
    const CohomologyGroup h4 = compute_cohomology(catalog_group("elem:3^2"), 4);
    REQUIRE(h4.invariant_factors == std::vector<Integer>{3, 3});
    const std::vector<FiniteGroup> catalog = {catalog_group("product:cyclic:3 x cyclic:9")};
    for (const auto& [omega, inverse] : std::vector<std::pair<ClassCoordinates, ClassCoordinates>>{
             {{{Integer(1), Integer(0)}}, {{Integer(2), Integer(0)}}},
             {{{Integer(0), Integer(1)}}, {{Integer(0), Integer(2)}}}}) {
        const Realization r = realize(h4, omega, catalog);
        CHECK(class_coordinates(pentagon_defect(r.skeleton).cocycle, h4) == omega);
        CHECK(class_coordinates(pentagon_defect(opposite(r.skeleton)).cocycle, h4) == inverse);
    }
}
