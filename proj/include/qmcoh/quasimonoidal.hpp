#pragma once

#include "qmcoh/cochain.hpp"
#include "qmcoh/group.hpp"

#include <iosfwd>

namespace qmcoh {

/// Pointed skeleton: simple objects are the elements of `cover`, graded by a
/// surjection onto `base`, with associator psi in C^3(cover, Q/Z).
struct QuasiMonoidalSkeleton {
    FiniteGroup cover;
    FiniteGroup base;
    GroupHom grading;
    Cochain associator;

    /// Validates grading (surjective, matching groups) and associator shape.
    QuasiMonoidalSkeleton(GroupHom grading, Cochain associator);
};

/// cover = base, identity grading, zero associator.
QuasiMonoidalSkeleton trivial_skeleton(const FiniteGroup& base);

struct PentagonDefect {
    FiniteGroup base;
    Cochain cocycle; // degree 4, Q/Z
};

/// Descends d(psi) along the grading. Throws DescentError naming the first
/// pair of cover tuples (lexicographic) over the same base tuple with
/// different values, or a cover tuple over a base tuple containing the
/// identity with a nonzero value.
PentagonDefect pentagon_defect(const QuasiMonoidalSkeleton& c);

/// Associator psi + p*lambda.
QuasiMonoidalSkeleton twist(const QuasiMonoidalSkeleton& c, const Cochain& lambda);

/// Reversed cover multiplication, grading g -> p(g)^-1, associator
/// psi_op(a,b,c) = -psi(c,b,a).
QuasiMonoidalSkeleton opposite(const QuasiMonoidalSkeleton& c);

/// Cover {(a,b) : p_C(a) = p_D(b)}, grading (a,b) -> p_C(a), associator
/// psi_C + psi_D on the components.
QuasiMonoidalSkeleton fiber_product(const QuasiMonoidalSkeleton& c, const QuasiMonoidalSkeleton& d);

/// Group with multiplication a*b := b.a (same element indices).
FiniteGroup opposite_group(const FiniteGroup& g);

// Skeleton text format:
//   skeleton
//   cover <label | path | inline>
//   base <label | path | inline>
//   grading i0 i1 ... i(n-1)
//   associator
//   <cochain block>
//   end
QuasiMonoidalSkeleton parse_skeleton(std::istream& in);
void write_skeleton(std::ostream& out, const QuasiMonoidalSkeleton& c);

} // namespace qmcoh
