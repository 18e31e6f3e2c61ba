#pragma once

#include "qmcoh/cochain.hpp"
#include "qmcoh/group.hpp"
#include "qmcoh/integer.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qmcoh {

/// Default limit on the row count (|G|-1)^(n+1) of a coboundary matrix;
/// 11^5 admits degree 4 for groups of order 12.
inline constexpr std::uint64_t kDefaultSizeBudget = 161051;

/// Budget in effect: QMCOH_SIZE_BUDGET if set to a positive integer,
/// otherwise kDefaultSizeBudget.
std::uint64_t size_budget();

/// Throws BudgetError when the matrix of d: C^n -> C^{n+1} has more rows than
/// the budget allows.
void check_budget(const FiniteGroup& g, int degree);

/// H^n(G, Q/Z) with explicit generators.
struct CohomologyGroup {
    FiniteGroup group;
    int degree;
    std::vector<Integer> invariant_factors; // d1 | d2 | ..., each > 1
    std::vector<Cochain> generators;        // one Q/Z n-cocycle per factor
    std::uint64_t matrix_rows = 0;
    std::uint64_t matrix_cols = 0;
    std::size_t rank = 0;

    bool trivial() const { return invariant_factors.empty(); }
};

struct ClassCoordinates {
    std::vector<Integer> coords;

    bool is_zero() const {
        for (const auto& c : coords) {
            if (c != 0) return false;
        }
        return true;
    }
    friend bool operator==(const ClassCoordinates&, const ClassCoordinates&) = default;
};

/// H^n(G, Q/Z) = H^{n+1}(G, Z), n >= 1, from the Smith form of the integral
/// differential C^n -> C^{n+1}.
CohomologyGroup compute_cohomology(const FiniteGroup& g, int degree);

enum class CoboundaryMethod { bockstein, bounded_denominator };

/// Decides whether a Q/Z cocycle is a coboundary. Throws InputError if f is
/// not a Q/Z cocycle.
bool is_coboundary(const Cochain& f, CoboundaryMethod method = CoboundaryMethod::bockstein);

/// A primitive rho with d(rho) = f whose values have denominators dividing
/// lcm(den f) * |G|, or nullopt if f is not a coboundary.
std::optional<Cochain> bounded_denominator_primitive(const Cochain& f);

/// Integral (n+1)-cocycle d(lift f) where lift takes values in [0, 1).
Cochain bockstein(const Cochain& f);

/// Coordinates of the class of f against the generators of h.
ClassCoordinates class_coordinates(const Cochain& f, const CohomologyGroup& h);

/// sum c_i * generator_i. Coordinates are reduced modulo the factors;
/// shorter vectors are padded with zeros.
Cochain class_representative(const CohomologyGroup& h, const ClassCoordinates& c);

/// Coordinates reduced into [0, d_i), padded to the factor count. Throws
/// InputError when too many coordinates are given.
ClassCoordinates normalize_coordinates(const CohomologyGroup& h, std::vector<Integer> coords);

/// Invariant factors of H^n(G, Q/Z) for n = 1..max_degree computed only from
/// cochain complexes with finite coefficients: group orders of
/// H^k(G, Z/p^j) for every prime power p^j dividing p*|G| give the
/// elementary divisors of H^k(G,Z) + H^{k+1}(G,Z), which are separated
/// degree by degree starting from H^1(G,Z) = 0. The order of
/// H^k(G, Z/|G|) is checked against the result. Entry k-1 holds degree k.
std::vector<std::vector<Integer>> finite_coefficient_cohomology(const FiniteGroup& g, int max_degree);

/// Invariant factors of a finite abelian group given by its cyclic orders.
std::vector<Integer> invariant_factors_of(const std::vector<Integer>& cyclic_orders);

/// Invariant factors of G/[G,G].
std::vector<Integer> abelianization_factors(const FiniteGroup& g);

} // namespace qmcoh
