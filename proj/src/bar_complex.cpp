#include "qmcoh/bar_complex.hpp"

#include "qmcoh/cochain.hpp"

#include <algorithm>

namespace qmcoh {

std::uint64_t cochain_dimension(const FiniteGroup& g, int degree) {
    return TupleIndexer(g.order(), degree).size();
}

SparseMatrix coboundary_matrix(const FiniteGroup& g, int degree) {
    const int m = g.order();
    const int n = degree;
    const TupleIndexer in(m, n), out(m, n + 1);
    SparseMatrix a;
    a.rows = static_cast<std::uint32_t>(out.size());
    a.cols = static_cast<std::uint32_t>(in.size());
    a.row_entries.resize(a.rows);
    if (a.rows == 0) return a;

    std::vector<Elem> t(n + 1, 1), face(n);
    std::vector<SparseEntry> terms;
    std::uint32_t row = 0;
    do {
        terms.clear();
        terms.push_back({static_cast<std::uint32_t>(in.index(std::span(t).subspan(1))), 1});
        for (int i = 1; i <= n; ++i) {
            const Elem prod = g.mul(t[i - 1], t[i]);
            if (prod == 0) continue;
            for (int k = 0, j = 0; k <= n; ++k) {
                if (k == i) continue;
                face[j++] = (k == i - 1) ? prod : t[k];
            }
            terms.push_back({static_cast<std::uint32_t>(in.index(face)), i % 2 == 0 ? 1 : -1});
        }
        terms.push_back({static_cast<std::uint32_t>(in.index(std::span(t).first(n))), (n + 1) % 2 == 0 ? 1 : -1});

        std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.index < y.index; });
        auto& entries = a.row_entries[row++];
        for (const auto& e : terms) {
            if (!entries.empty() && entries.back().index == e.index) {
                entries.back().value += e.value;
                if (entries.back().value == 0) entries.pop_back();
            } else {
                entries.push_back(e);
            }
        }
    } while (next_tuple(t, m));
    return a;
}

} // namespace qmcoh
