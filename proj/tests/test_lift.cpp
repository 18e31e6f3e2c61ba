#include "qmcoh/errors.hpp"
#include "qmcoh/lift.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace qmcoh;
using qmcoh::testing::Rng;

namespace {

const FiniteGroup& v4() {
    static const FiniteGroup g = catalog_group("elem:2^2");
    return g;
}

const CohomologyGroup& v4_h4() {
    static const CohomologyGroup h = compute_cohomology(v4(), 4);
    return h;
}

bool is_identity_hom(const GroupHom& h) {
    if (!h.source().same_table(h.target())) return false;
    for (Elem a = 0; a < h.source().order(); ++a) {
        if (h(a) != a) return false;
    }
    return true;
}

} // namespace

TEST_CASE("default cover catalog") {
    const auto cat = default_cover_catalog();
    REQUIRE(!cat.empty());
    for (std::size_t i = 1; i < cat.size(); ++i) CHECK(cat[i - 1].order() <= cat[i].order());
    CHECK(cat.back().order() <= 16);
    CHECK(default_cover_catalog(4).size() < cat.size());
}

TEST_CASE("coboundaries and cyclic groups need no cover") {
    Rng rng(51);
    const FiniteGroup s3 = catalog_group("sym:3");
    const Cochain nu = coboundary(testing::random_cochain(s3, 3, rng));
    const CoverSearch s = find_cover(s3, nu, default_cover_catalog());
    CHECK(is_identity_hom(s.hom));
    CHECK(s.surjections_tested == 0);
    for (int m = 2; m <= 6; ++m) {
        const FiniteGroup g = catalog_group("cyclic:" + std::to_string(m));
        const Cochain w = coboundary(testing::random_cochain(g, 3, rng));
        CHECK(is_identity_hom(find_cover(g, w, default_cover_catalog()).hom));
    }
    CHECK_THROWS_AS(find_cover(s3, testing::random_cochain(s3, 4, rng), default_cover_catalog()), InputError);
}

TEST_CASE("Klein four generators lift to dihedral:4") {
    // regression fixture: the first cover that kills each generator
    const auto cat = default_cover_catalog();
    for (std::size_t i = 0; i < v4_h4().generators.size(); ++i) {
        CAPTURE(i);
        const CoverSearch s = find_cover(v4(), v4_h4().generators[i], cat);
        CHECK(s.hom.source().name() == "dihedral:4");
        CHECK(s.hom.source().order() == 8);
        CHECK(is_surjective(s.hom));
        CHECK(is_coboundary(pullback(s.hom, v4_h4().generators[i])));
        CHECK(!s.diagnostics.empty());
        CHECK(s.surjections_tested > 0);
        // smaller covers do not exist for a non-trivial class
        CHECK_FALSE(is_coboundary(v4_h4().generators[i]));
    }
}

TEST_CASE("catalog exhaustion") {
    const std::vector<FiniteGroup> small = {catalog_group("cyclic:4"), v4(), catalog_group("elem:2^3")};
    try {
        find_cover(v4(), v4_h4().generators[0], small);
        FAIL("expected exhaustion");
    } catch (const ExhaustionError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("elem:2^3") != std::string::npos);
        CHECK(e.exit_code() == 3);
    }
}

TEST_CASE("solve_primitive routes") {
    Rng rng(52);
    const FiniteGroup s3 = catalog_group("sym:3");
    const GroupHom id = GroupHom::identity(s3);
    for (auto route : {PrimitiveRoute::automatic, PrimitiveRoute::rational_lift, PrimitiveRoute::bounded_denominator}) {
        CHECK(solve_primitive(id, Cochain(s3, 4, CoeffKind::qz), route).is_zero());
        const Cochain lambda = testing::random_cochain(s3, 3, rng);
        const Cochain psi = solve_primitive(id, coboundary(lambda), route);
        CHECK(coboundary(psi) == coboundary(lambda));
        CHECK(is_cocycle(subtract_cochains(psi, lambda)));
    }
    const CoverSearch s = find_cover(v4(), v4_h4().generators[1], default_cover_catalog());
    const Cochain a = solve_primitive(s.hom, v4_h4().generators[1], PrimitiveRoute::rational_lift);
    const Cochain b = solve_primitive(s.hom, v4_h4().generators[1], PrimitiveRoute::bounded_denominator);
    CHECK(coboundary(a) == pullback(s.hom, v4_h4().generators[1]));
    CHECK(coboundary(b) == pullback(s.hom, v4_h4().generators[1]));
    // the two primitives differ by a 3-cocycle on the cover
    CHECK(is_cocycle(subtract_cochains(a, b)));
    CHECK_THROWS_AS(solve_primitive(GroupHom::identity(v4()), v4_h4().generators[0]), InputError);
}

TEST_CASE("realize round trips on the Klein four group") {
    const auto cat = default_cover_catalog();
    const Realization zero = realize(v4_h4(), {{Integer(0), Integer(0)}}, cat);
    CHECK(zero.skeleton.cover.same_table(v4()));
    CHECK(zero.skeleton.associator.is_zero());
    CHECK(pentagon_defect(zero.skeleton).cocycle.is_zero());

    std::vector<Realization> parts;
    for (const auto& omega : {ClassCoordinates{{Integer(1), Integer(0)}}, ClassCoordinates{{Integer(0), Integer(1)}},
                              ClassCoordinates{{Integer(1), Integer(1)}}}) {
        const Realization r = realize(v4_h4(), omega, cat);
        CHECK(r.skeleton.cover.order() <= 16);
        CHECK(class_coordinates(pentagon_defect(r.skeleton).cocycle, v4_h4()) == omega);
        parts.push_back(r);
    }
    const QuasiMonoidalSkeleton sum = fiber_product(parts[0].skeleton, parts[1].skeleton);
    CHECK(class_coordinates(pentagon_defect(sum).cocycle, v4_h4()) == ClassCoordinates{{Integer(1), Integer(1)}});
    const QuasiMonoidalSkeleton twice = fiber_product(parts[2].skeleton, parts[2].skeleton);
    CHECK(class_coordinates(pentagon_defect(twice).cocycle, v4_h4()).is_zero());
    // short coordinate vectors are padded
    CHECK(class_coordinates(pentagon_defect(realize(v4_h4(), {{Integer(1)}}, cat).skeleton).cocycle, v4_h4()) ==
          ClassCoordinates{{Integer(1), Integer(0)}});
}
