#include "qmcoh/lift.hpp"

#include "qmcoh/errors.hpp"
#include "qmcoh/factor_cache.hpp"

#include <algorithm>

namespace qmcoh {

namespace {

bool within_budget(const FiniteGroup& g, int degree) {
    try {
        check_budget(g, degree);
        return true;
    } catch (const BudgetError&) {
        return false;
    }
}

bool trivial_class(const Cochain& f) {
    if (within_budget(f.group(), f.degree())) return is_coboundary(f, CoboundaryMethod::bockstein);
    return is_coboundary(f, CoboundaryMethod::bounded_denominator);
}

Cochain rational_lift_primitive(const Cochain& pnu) {
    const FiniteGroup& cover = pnu.group();
    check_budget(cover, 4);
    const Integer scale = denominator_lcm(pnu);
    const std::vector<Integer> a = to_dense(qz_numerators(pnu, scale));
    const Cochain z = bockstein(pnu);

    auto f4 = integer_coboundary_factorization(cover, 4);
    auto mu = f4->solve(to_dense(z));
    if (!mu) throw InputError("pulled-back class is not a coboundary on the cover");

    std::vector<Rational> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rational(a[i], scale) - Rational((*mu)[i]);
    auto f3 = integer_coboundary_factorization(cover, 3);
    auto rho = f3->solve_rational(std::move(r));
    if (!rho) throw InternalError("rational 4-cocycle is not a rational coboundary");

    Cochain psi(cover, 3, CoeffKind::qz);
    for (std::uint64_t i = 0; i < rho->size(); ++i) {
        const QZValue v((*rho)[i]);
        if (!v.is_zero()) psi.set_index(i, v);
    }
    return psi;
}

} // namespace

std::vector<FiniteGroup> default_cover_catalog(int max_order) {
    std::vector<FiniteGroup> out;
    for (const auto& label : default_catalog_labels(max_order)) out.push_back(catalog_group(label));
    return out;
}

CoverSearch find_cover(const FiniteGroup& g, const Cochain& nu, const std::vector<FiniteGroup>& catalog) {
    if (nu.kind() != CoeffKind::qz || nu.degree() != 4) throw InputError("find_cover needs a Q/Z 4-cochain");
    if (!nu.group().same_table(g)) throw InputError("cochain lives on a different group");
    if (!is_cocycle(nu)) throw InputError("cochain is not a cocycle");
    if (trivial_class(nu)) return {GroupHom::identity(g), {"class is already trivial on " + g.name()}, 0};

    std::vector<FiniteGroup> ordered = catalog;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const FiniteGroup& x, const FiniteGroup& y) { return x.order() < y.order(); });
    CoverSearch search{GroupHom::identity(g), {}, 0};
    for (const auto& cover : ordered) {
        if (cover.order() % g.order() != 0) {
            search.diagnostics.push_back(cover.name() + ": order " + std::to_string(cover.order()) +
                                         " is not a multiple of " + std::to_string(g.order()));
            continue;
        }
        const std::vector<GroupHom> surjections = enumerate_surjections(cover, g);
        std::size_t tested = 0;
        for (const auto& p : surjections) {
            ++tested;
            ++search.surjections_tested;
            if (is_coboundary(pullback(p, nu), CoboundaryMethod::bounded_denominator)) {
                search.diagnostics.push_back(cover.name() + ": surjection " + std::to_string(tested) + " of " +
                                             std::to_string(surjections.size()) + " trivializes the class");
                search.hom = p;
                return search;
            }
        }
        search.diagnostics.push_back(cover.name() + ": " + std::to_string(surjections.size()) +
                                     " surjections, none trivializes the class");
    }
    std::string message = "no cover in the catalog trivializes the class (catalog too small):";
    for (const auto& d : search.diagnostics) message += "\n  " + d;
    throw ExhaustionError(message);
}

Cochain solve_primitive(const GroupHom& p, const Cochain& nu, PrimitiveRoute route) {
    if (nu.kind() != CoeffKind::qz || nu.degree() != 4) throw InputError("solve_primitive needs a Q/Z 4-cochain");
    const Cochain pnu = pullback(p, nu);
    if (!is_cocycle(pnu)) throw InputError("cochain is not a cocycle");
    if (pnu.is_zero()) return Cochain(p.source(), 3, CoeffKind::qz);

    if (route == PrimitiveRoute::automatic) {
        route = within_budget(p.source(), 4) ? PrimitiveRoute::rational_lift : PrimitiveRoute::bounded_denominator;
    }
    Cochain psi(p.source(), 3, CoeffKind::qz);
    if (route == PrimitiveRoute::rational_lift) {
        psi = rational_lift_primitive(pnu);
    } else {
        auto rho = bounded_denominator_primitive(pnu);
        if (!rho) throw InputError("pulled-back class is not a coboundary on the cover");
        psi = std::move(*rho);
    }
    if (!(coboundary(psi) == pnu)) throw InternalError("primitive does not reproduce the pulled-back cocycle");
    return psi;
}

Realization realize(const CohomologyGroup& h4, const ClassCoordinates& omega, const std::vector<FiniteGroup>& catalog,
                    PrimitiveRoute route) {
    if (h4.degree != 4) throw InputError("realize needs H^4");
    const ClassCoordinates target = normalize_coordinates(h4, omega.coords);
    const Cochain nu = class_representative(h4, target);
    CoverSearch search = find_cover(h4.group, nu, catalog);
    Cochain psi = solve_primitive(search.hom, nu, route);
    QuasiMonoidalSkeleton skeleton(search.hom, std::move(psi));
    const PentagonDefect d = pentagon_defect(skeleton);
    if (!(class_coordinates(d.cocycle, h4) == target)) throw InternalError("realized skeleton has the wrong class");
    return {std::move(skeleton), std::move(search)};
}

} // namespace qmcoh
