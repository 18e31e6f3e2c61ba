#pragma once

// Random generators shared by the unit tests and the acceptance driver.

#include "qmcoh/cochain.hpp"
#include "qmcoh/cohomology.hpp"
#include "qmcoh/lift.hpp"
#include "qmcoh/quasimonoidal.hpp"

#include <random>

namespace qmcoh::testing {

using Rng = std::mt19937_64;

inline Integer uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return Integer(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng));
}

/// Random Q/Z cochain with denominators dividing max_den; each tuple is
/// filled with probability density.
inline Cochain random_cochain(const FiniteGroup& g, int degree, Rng& rng, int max_den = 12, double density = 1.0) {
    Cochain f(g, degree, CoeffKind::qz);
    const std::uint64_t n = f.indexer().size();
    std::bernoulli_distribution keep(density);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!keep(rng)) continue;
        const Integer den = uniform(rng, 1, max_den);
        f.set_index(i, QZValue(uniform(rng, 0, static_cast<std::int64_t>(den) - 1), den));
    }
    return f;
}

inline Cochain random_int_cochain(const FiniteGroup& g, int degree, Rng& rng, int bound = 5) {
    Cochain f(g, degree, CoeffKind::integer);
    for (std::uint64_t i = 0; i < f.indexer().size(); ++i) f.set_index(i, uniform(rng, -bound, bound));
    return f;
}

inline std::vector<Integer> random_coordinates(const CohomologyGroup& h, Rng& rng) {
    std::vector<Integer> c;
    for (const auto& d : h.invariant_factors) c.push_back(uniform(rng, 0, static_cast<std::int64_t>(d) - 1));
    return c;
}

/// A cocycle in a random class plus the coboundary of a random cochain.
inline Cochain random_cocycle(const CohomologyGroup& h, Rng& rng, ClassCoordinates* cls = nullptr) {
    const ClassCoordinates c{random_coordinates(h, rng)};
    if (cls) *cls = c;
    return add_cochains(class_representative(h, c), coboundary(random_cochain(h.group, h.degree - 1, rng, 6, 0.5)));
}

/// Random quasi-monoidal skeleton with grading p: a primitive of p*nu for a
/// random class nu that p kills (zero if the drawn class survives), plus
/// p*lambda, a coboundary and random cover 3-cocycles.
inline QuasiMonoidalSkeleton random_skeleton(const GroupHom& p, const CohomologyGroup& base_h4,
                                             const CohomologyGroup& cover_h3, Rng& rng) {
    Cochain psi(p.source(), 3, CoeffKind::qz);
    const Cochain nu = class_representative(base_h4, {random_coordinates(base_h4, rng)});
    if (!nu.is_zero() && is_coboundary(pullback(p, nu), CoboundaryMethod::bounded_denominator)) {
        psi = solve_primitive(p, nu);
    }
    psi = add_cochains(psi, pullback(p, random_cochain(p.target(), 3, rng, 8, 0.6)));
    psi = add_cochains(psi, coboundary(random_cochain(p.source(), 2, rng, 8, 0.6)));
    psi = add_cochains(psi, class_representative(cover_h3, {random_coordinates(cover_h3, rng)}));
    return QuasiMonoidalSkeleton(p, psi);
}

} // namespace qmcoh::testing
