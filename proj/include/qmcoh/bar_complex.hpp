#pragma once

#include "qmcoh/elimination.hpp"
#include "qmcoh/group.hpp"

#include <cstdint>

namespace qmcoh {

/// Number of normalized n-cochain coordinates: (|G|-1)^n.
std::uint64_t cochain_dimension(const FiniteGroup& g, int degree);

/// Matrix of the normalized coboundary C^n(G,Z) -> C^{n+1}(G,Z): rows are
/// (n+1)-tuples, columns n-tuples, both in lexicographic TupleIndexer order.
SparseMatrix coboundary_matrix(const FiniteGroup& g, int degree);

} // namespace qmcoh
