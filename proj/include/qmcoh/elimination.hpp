#pragma once

// Exact elimination for sparse integer matrices over Z and Z/M.
//
// A matrix is factored in three phases. The sparse phase pivots on unit
// entries only (Markowitz-style: least-filled column first, shortest row
// among its unit entries), recording each pivot row and column so that
// right-hand sides can be pushed through later. The residual is usually tall
// and thin; a Euclidean row-echelon pass (recorded elementary row operations)
// leaves at most one row per column. That small block is brought to diagonal
// (Smith) form densely with full transforms U * A * V = D.

#include "qmcoh/errors.hpp"
#include "qmcoh/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

namespace qmcoh {

struct SparseEntry {
    std::uint32_t index;
    std::int64_t value;
};

/// Row-major sparse integer matrix; every row sorted by column, no zeros.
struct SparseMatrix {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<std::vector<SparseEntry>> row_entries;

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : row_entries) n += r.size();
        return n;
    }
};

/// Integers with scalar type S (CheckedInt or Integer).
template <class S>
struct IntegerRing {
    using value_type = S;
    static constexpr bool needs_divisibility = true;

    S from_int(std::int64_t v) const { return S(v); }
    S from_integer(const Integer& v) const {
        if constexpr (std::is_same_v<S, Integer>) {
            return v;
        } else {
            return S(v);
        }
    }
    Integer to_integer_value(const S& v) const { return to_integer(v); }
    bool is_zero(const S& v) const { return v == S(0); }
    bool is_unit(const S& v) const { return v == S(1) || v == S(-1); }
    S unit_inverse(const S& v) const { return v; }
    S add(const S& a, const S& b) const { return a + b; }
    S sub(const S& a, const S& b) const { return a - b; }
    S mul(const S& a, const S& b) const { return a * b; }
    S neg(const S& a) const { return -a; }
    bool smaller(const S& a, const S& b) const { return abs(a) < abs(b); }
    S quotient(const S& a, const S& b) const { return a / b; }
    bool divides(const S& d, const S& a) const { return a % d == S(0); }
    /// Canonical associate of a diagonal entry and the unit that produces it.
    std::pair<S, S> normalize(const S& d) const { return d < S(0) ? std::pair{-d, S(-1)} : std::pair{d, S(1)}; }
    /// z with d * z = y, if any.
    std::optional<S> solve_scalar(const S& d, const S& y) const {
        if (y % d != S(0)) return std::nullopt;
        return y / d;
    }
};

/// Z/M with representatives in [0, M).
struct ModRing {
    using value_type = std::uint64_t;
    static constexpr bool needs_divisibility = false;
    std::uint64_t modulus;

    explicit ModRing(std::uint64_t m) : modulus(m) {
        if (m < 2) throw InternalError("modulus must be at least 2");
    }

    std::uint64_t from_int(std::int64_t v) const {
        const auto m = static_cast<std::int64_t>(modulus);
        return static_cast<std::uint64_t>(((v % m) + m) % m);
    }
    std::uint64_t from_integer(const Integer& v) const {
        return static_cast<std::uint64_t>(floor_mod(v, Integer(modulus)));
    }
    Integer to_integer_value(std::uint64_t v) const { return Integer(v); }
    bool is_zero(std::uint64_t v) const { return v == 0; }
    bool is_unit(std::uint64_t v) const { return v != 0 && std::gcd(v, modulus) == 1; }
    std::uint64_t unit_inverse(std::uint64_t v) const { return inverse_mod(v, modulus); }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= modulus ? s - modulus : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + modulus - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus);
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : modulus - a; }
    bool smaller(std::uint64_t a, std::uint64_t b) const { return a < b; }
    std::uint64_t quotient(std::uint64_t a, std::uint64_t b) const { return a / b; }
    bool divides(std::uint64_t d, std::uint64_t a) const { return a % d == 0; }
    std::pair<std::uint64_t, std::uint64_t> normalize(std::uint64_t d) const { return {d, 1}; }
    std::optional<std::uint64_t> solve_scalar(std::uint64_t d, std::uint64_t y) const {
        const std::uint64_t g = std::gcd(d, modulus);
        if (y % g != 0) return std::nullopt;
        const std::uint64_t m = modulus / g;
        if (m == 1) return 0;
        const std::uint64_t inv = inverse_mod((d / g) % m, m);
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(y / g) * inv % m);
    }

    static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
        __int128 t = 0, new_t = 1;
        __int128 r = m, new_r = a % m;
        while (new_r != 0) {
            const __int128 q = r / new_r;
            std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
            std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
        }
        if (r != 1) throw InternalError("element is not a unit");
        if (t < 0) t += m;
        return static_cast<std::uint64_t>(t);
    }
};

/// Exact arithmetic over Q used for rational solves through an integer
/// factorization.
struct RationalOps {
    using value_type = Rational;
    bool is_zero(const Rational& v) const { return v == 0; }
    Rational add(const Rational& a, const Rational& b) const { return a + b; }
    Rational sub(const Rational& a, const Rational& b) const { return a - b; }
    Rational mul(const Rational& a, const Rational& b) const { return a * b; }
    std::optional<Rational> solve_scalar(const Rational& d, const Rational& y) const { return y / d; }
};

template <class V>
using DenseMatrix = std::vector<std::vector<V>>;

/// Result of factoring a sparse matrix A (rows x cols) over a ring.
template <class Ring>
class Factorization {
public:
    using V = typename Ring::value_type;

    struct Entry {
        std::uint32_t index;
        V value;
    };
    struct Pivot {
        std::uint32_t row;
        std::uint32_t col;
        V inverse;                  // inverse of the unit pivot entry
        std::vector<Entry> row_rest; // pivot row without the pivot, at elimination time
        std::vector<Entry> col_rest; // pivot column without the pivot, at elimination time
    };

    Factorization(const Ring& ring, const SparseMatrix& a) : ring_(ring), rows_(a.rows), cols_(a.cols) {
        eliminate_sparse(a);
        echelonize_residual();
        reduce_dense();
    }

    const Ring& ring() const { return ring_; }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    std::size_t sparse_pivots() const { return pivots_.size(); }
    std::size_t rank() const { return pivots_.size() + diag_.size(); }
    std::size_t residual_rows() const { return dense_rows_.size(); }
    std::size_t residual_cols() const { return dense_cols_.size(); }
    std::size_t recorded_entries() const {
        std::size_t n = 0;
        for (const auto& p : pivots_) n += p.row_rest.size() + p.col_rest.size();
        return n;
    }

    /// Diagonal entries of the dense phase (the sparse phase contributes
    /// units only). For Z these are positive and form a divisibility chain.
    const std::vector<V>& dense_diagonal() const { return diag_; }

    /// Pushes b through the sparse phase. Returns the values consumed at each
    /// pivot (needed for back substitution); b is left holding the residual
    /// right-hand side on non-pivot rows.
    template <class Ops, class Conv>
    std::vector<typename Ops::value_type> forward(const Ops& ops, const Conv& conv,
                                                  std::vector<typename Ops::value_type>& b) const {
        using T = typename Ops::value_type;
        std::vector<T> betas;
        betas.reserve(pivots_.size());
        for (const auto& p : pivots_) {
            T beta = b[p.row];
            if (!ops.is_zero(beta)) {
                const T f = ops.mul(conv(p.inverse), beta);
                for (const auto& e : p.col_rest) b[e.index] = ops.sub(b[e.index], ops.mul(conv(e.value), f));
            }
            betas.push_back(std::move(beta));
        }
        for (const auto& op : row_ops_) {
            if (!ops.is_zero(b[op.source])) b[op.target] = ops.add(b[op.target], ops.mul(conv(op.factor), b[op.source]));
        }
        return betas;
    }

    /// Residual right-hand side in dense-row order, multiplied by U.
    template <class Ops, class Conv>
    std::vector<typename Ops::value_type> apply_u(const Ops& ops, const Conv& conv,
                                                  const std::vector<typename Ops::value_type>& b) const {
        using T = typename Ops::value_type;
        std::vector<T> y(dense_rows_.size(), T(0));
        for (std::size_t i = 0; i < dense_rows_.size(); ++i) {
            T acc(0);
            for (std::size_t k = 0; k < dense_rows_.size(); ++k) {
                if (!ring_.is_zero(u_[i][k]) && !ops.is_zero(b[dense_rows_[k]])) {
                    acc = ops.add(acc, ops.mul(conv(u_[i][k]), b[dense_rows_[k]]));
                }
            }
            y[i] = std::move(acc);
        }
        return y;
    }

    /// Solves A x = b. `ops` is the arithmetic of b (the ring itself, exact
    /// integers, or rationals); conv maps stored entries into it. Columns
    /// never pivoted get 0, so the zero solution is preferred when b = 0.
    template <class Ops, class Conv>
    std::optional<std::vector<typename Ops::value_type>> solve(const Ops& ops, const Conv& conv,
                                                                std::vector<typename Ops::value_type> b) const {
        using T = typename Ops::value_type;
        const std::vector<T> betas = forward(ops, conv, b);
        for (std::uint32_t r : zero_rows_) {
            if (!ops.is_zero(b[r])) return std::nullopt;
        }
        const std::vector<T> y = apply_u(ops, conv, b);
        std::vector<T> z(dense_cols_.size(), T(0));
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (i < diag_.size()) {
                auto s = ops.solve_scalar(conv(diag_[i]), y[i]);
                if (!s) return std::nullopt;
                z[i] = std::move(*s);
            } else if (!ops.is_zero(y[i])) {
                return std::nullopt;
            }
        }
        std::vector<T> x(cols_, T(0));
        for (std::size_t j = 0; j < dense_cols_.size(); ++j) {
            T acc(0);
            for (std::size_t k = 0; k < diag_.size(); ++k) {
                if (!ring_.is_zero(v_[j][k]) && !ops.is_zero(z[k])) acc = ops.add(acc, ops.mul(conv(v_[j][k]), z[k]));
            }
            x[dense_cols_[j]] = std::move(acc);
        }
        for (std::size_t k = pivots_.size(); k-- > 0;) {
            const Pivot& p = pivots_[k];
            T s = betas[k];
            for (const auto& e : p.row_rest) {
                if (!ops.is_zero(x[e.index])) s = ops.sub(s, ops.mul(conv(e.value), x[e.index]));
            }
            x[p.col] = ops.mul(conv(p.inverse), s);
        }
        return x;
    }

    /// Column i of U^-1 spread over the original rows: a representative of
    /// the i-th cyclic summand of the cokernel.
    template <class Ops, class Conv>
    std::vector<typename Ops::value_type> cokernel_generator(const Ops& ops, const Conv& conv,
                                                             std::size_t i) const {
        using T = typename Ops::value_type;
        std::vector<T> out(rows_, T(0));
        for (std::size_t k = 0; k < dense_rows_.size(); ++k) out[dense_rows_[k]] = conv(u_inv_[k][i]);
        for (std::size_t k = row_ops_.size(); k-- > 0;) {
            const RowOp& op = row_ops_[k];
            if (!ops.is_zero(out[op.source])) out[op.target] = ops.sub(out[op.target], ops.mul(conv(op.factor), out[op.source]));
        }
        return out;
    }

    const std::vector<std::uint32_t>& zero_rows() const { return zero_rows_; }
    const std::vector<std::uint32_t>& dense_rows() const { return dense_rows_; }

private:
    // row[target] += factor * row[source]
    struct RowOp {
        std::uint32_t target;
        std::uint32_t source;
        V factor;
    };

    void eliminate_sparse(const SparseMatrix& a);
    void echelonize_residual();
    void reduce_dense();

    Ring ring_;
    std::uint32_t rows_;
    std::uint32_t cols_;
    std::vector<Pivot> pivots_;
    std::vector<std::uint32_t> zero_rows_;
    std::vector<std::uint32_t> dense_rows_;
    std::vector<std::uint32_t> dense_cols_;
    std::vector<std::pair<std::uint32_t, std::vector<Entry>>> sparse_residual_;
    std::vector<RowOp> row_ops_;
    DenseMatrix<V> residual_;
    DenseMatrix<V> u_;
    DenseMatrix<V> u_inv_;
    DenseMatrix<V> v_;
    std::vector<V> diag_;
};

template <class Ring>
void Factorization<Ring>::eliminate_sparse(const SparseMatrix& a) {
    std::vector<std::vector<Entry>> rows(rows_);
    std::vector<std::vector<std::uint32_t>> col_rows(cols_);
    std::vector<std::uint32_t> col_count(cols_, 0);
    for (std::uint32_t r = 0; r < rows_; ++r) {
        for (const auto& e : a.row_entries[r]) {
            V v = ring_.from_int(e.value);
            if (ring_.is_zero(v)) continue;
            rows[r].push_back({e.index, std::move(v)});
            col_rows[e.index].push_back(r);
            ++col_count[e.index];
        }
    }
    std::vector<char> row_active(rows_, 1), col_done(cols_, 0);

    using Key = std::pair<std::uint32_t, std::uint32_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
    for (std::uint32_t c = 0; c < cols_; ++c) {
        if (col_count[c] > 0) queue.emplace(col_count[c], c);
    }

    auto find_in_row = [](const std::vector<Entry>& row, std::uint32_t c) -> const Entry* {
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::uint32_t col) { return e.index < col; });
        return (it != row.end() && it->index == c) ? &*it : nullptr;
    };

    std::vector<Entry> merged;
    std::vector<std::uint32_t> deferred;
    std::vector<std::uint32_t> members;
    bool progress = true;
    while (progress) {
        progress = false;
        while (!queue.empty()) {
            const auto [count, c] = queue.top();
            queue.pop();
            if (col_done[c] || col_count[c] == 0) continue;
            if (count != col_count[c]) {
                queue.emplace(col_count[c], c);
                continue;
            }
            // Collect the live rows of column c and choose the pivot.
            members.clear();
            std::uint32_t pivot_row = UINT32_MAX;
            std::size_t best_len = SIZE_MAX;
            auto& list = col_rows[c];
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            for (std::uint32_t r : list) {
                if (!row_active[r]) continue;
                const Entry* e = find_in_row(rows[r], c);
                if (!e) continue;
                members.push_back(r);
                if (ring_.is_unit(e->value) && rows[r].size() < best_len) {
                    best_len = rows[r].size();
                    pivot_row = r;
                }
            }
            list = members;
            if (pivot_row == UINT32_MAX) {
                deferred.push_back(c);
                continue;
            }

            Pivot p;
            p.row = pivot_row;
            p.col = c;
            const V pivot_value = find_in_row(rows[pivot_row], c)->value;
            p.inverse = ring_.unit_inverse(pivot_value);
            std::vector<Entry> prow = std::move(rows[pivot_row]);
            rows[pivot_row].clear();
            row_active[pivot_row] = 0;
            for (const auto& e : prow) --col_count[e.index];

            for (std::uint32_t r : members) {
                if (r == pivot_row) continue;
                auto& row = rows[r];
                const V factor_src = find_in_row(row, c)->value;
                p.col_rest.push_back({r, factor_src});
                const V f = ring_.mul(factor_src, p.inverse);
                // row -= f * prow
                merged.clear();
                merged.reserve(row.size() + prow.size());
                std::size_t i = 0, j = 0;
                while (i < row.size() || j < prow.size()) {
                    if (j == prow.size() || (i < row.size() && row[i].index < prow[j].index)) {
                        merged.push_back(std::move(row[i++]));
                    } else if (i == row.size() || prow[j].index < row[i].index) {
                        const std::uint32_t col = prow[j].index;
                        V v = ring_.neg(ring_.mul(f, prow[j].value));
                        ++j;
                        if (ring_.is_zero(v)) continue;
                        merged.push_back({col, std::move(v)});
                        col_rows[col].push_back(r);
                        ++col_count[col];
                    } else {
                        const std::uint32_t col = row[i].index;
                        V v = ring_.sub(row[i].value, ring_.mul(f, prow[j].value));
                        ++i;
                        ++j;
                        if (ring_.is_zero(v)) {
                            --col_count[col];
                            continue;
                        }
                        merged.push_back({col, std::move(v)});
                    }
                }
                row.swap(merged);
            }
            col_done[c] = 1;
            col_count[c] = 0;
            col_rows[c].clear();
            col_rows[c].shrink_to_fit();
            for (auto& e : prow) {
                if (e.index != c) p.row_rest.push_back(std::move(e));
            }
            pivots_.push_back(std::move(p));
            progress = true;
        }
        // Deferred columns may have gained unit entries through fill-in.
        if (progress) {
            for (std::uint32_t c : deferred) {
                if (!col_done[c] && col_count[c] > 0) queue.emplace(col_count[c], c);
            }
            deferred.clear();
        }
    }

    for (std::uint32_t r = 0; r < rows_; ++r) {
        if (!row_active[r]) continue;
        if (rows[r].empty()) {
            zero_rows_.push_back(r);
        } else {
            sparse_residual_.emplace_back(r, std::move(rows[r]));
        }
    }
}

template <class Ring>
void Factorization<Ring>::echelonize_residual() {
    // Local row numbering for the residual; row ops are recorded with
    // original row indices.
    auto& res = sparse_residual_;
    const std::size_t count = res.size();
    std::vector<std::vector<std::uint32_t>> col_list(cols_);
    for (std::uint32_t i = 0; i < count; ++i) {
        for (const auto& e : res[i].second) col_list[e.index].push_back(i);
    }
    auto value_at = [&](std::uint32_t i, std::uint32_t c) -> const V* {
        const auto& row = res[i].second;
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::uint32_t col) { return e.index < col; });
        return (it != row.end() && it->index == c) ? &it->value : nullptr;
    };
    std::vector<char> echelon(count, 0);
    std::vector<std::uint32_t> echelon_rows;
    std::vector<std::uint32_t> live;
    std::vector<Entry> merged;
    for (std::uint32_t c = 0; c < cols_; ++c) {
        while (true) {
            auto& list = col_list[c];
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            live.clear();
            for (std::uint32_t i : list) {
                if (!echelon[i] && value_at(i, c)) live.push_back(i);
            }
            list = live;
            if (live.empty()) break;
            std::uint32_t best = live.front();
            for (std::uint32_t i : live) {
                if (ring_.smaller(*value_at(i, c), *value_at(best, c))) best = i;
            }
            if (live.size() == 1) {
                echelon[best] = 1;
                echelon_rows.push_back(best);
                break;
            }
            const std::vector<Entry> pivot_row = res[best].second;
            const V pivot = *value_at(best, c);
            bool remainders = false;
            for (std::uint32_t i : live) {
                if (i == best) continue;
                const V factor = ring_.neg(ring_.quotient(*value_at(i, c), pivot));
                if (ring_.is_zero(factor)) {
                    remainders = true;
                    continue;
                }
                row_ops_.push_back({res[i].first, res[best].first, factor});
                auto& row = res[i].second;
                merged.clear();
                std::size_t a = 0, b = 0;
                while (a < row.size() || b < pivot_row.size()) {
                    if (b == pivot_row.size() || (a < row.size() && row[a].index < pivot_row[b].index)) {
                        merged.push_back(std::move(row[a++]));
                    } else if (a == row.size() || pivot_row[b].index < row[a].index) {
                        V v = ring_.mul(factor, pivot_row[b].value);
                        const std::uint32_t col = pivot_row[b++].index;
                        if (ring_.is_zero(v)) continue;
                        merged.push_back({col, std::move(v)});
                        col_list[col].push_back(i);
                    } else {
                        V v = ring_.add(row[a].value, ring_.mul(factor, pivot_row[b].value));
                        const std::uint32_t col = row[a].index;
                        ++a;
                        ++b;
                        if (ring_.is_zero(v)) continue;
                        merged.push_back({col, std::move(v)});
                    }
                }
                row.swap(merged);
                if (value_at(i, c)) remainders = true;
            }
            if (!remainders) {
                echelon[best] = 1;
                echelon_rows.push_back(best);
                break;
            }
        }
    }

    std::vector<char> col_used(cols_, 0);
    for (std::uint32_t i = 0; i < count; ++i) {
        if (echelon[i]) {
            for (const auto& e : res[i].second) col_used[e.index] = 1;
        } else if (!res[i].second.empty()) {
            throw InternalError("row echelon pass left a nonzero row");
        }
    }
    std::sort(echelon_rows.begin(), echelon_rows.end());
    for (std::uint32_t i = 0; i < count; ++i) {
        if (!echelon[i]) zero_rows_.push_back(res[i].first);
    }
    std::sort(zero_rows_.begin(), zero_rows_.end());
    for (std::uint32_t c = 0; c < cols_; ++c) {
        if (col_used[c]) dense_cols_.push_back(c);
    }
    std::vector<std::uint32_t> col_pos(cols_, UINT32_MAX);
    for (std::uint32_t j = 0; j < dense_cols_.size(); ++j) col_pos[dense_cols_[j]] = j;
    residual_.assign(echelon_rows.size(), std::vector<V>(dense_cols_.size(), ring_.from_int(0)));
    for (std::size_t k = 0; k < echelon_rows.size(); ++k) {
        dense_rows_.push_back(res[echelon_rows[k]].first);
        for (auto& e : res[echelon_rows[k]].second) residual_[k][col_pos[e.index]] = std::move(e.value);
    }
    res.clear();
    res.shrink_to_fit();
}

template <class Ring>
void Factorization<Ring>::reduce_dense() {
    const std::size_t m = dense_rows_.size();
    const std::size_t n = dense_cols_.size();
    auto& a = residual_;
    const V zero = ring_.from_int(0);
    const V one = ring_.from_int(1);
    auto identity = [&](std::size_t k) {
        DenseMatrix<V> id(k, std::vector<V>(k, zero));
        for (std::size_t i = 0; i < k; ++i) id[i][i] = one;
        return id;
    };
    u_ = identity(m);
    u_inv_ = identity(m);
    v_ = identity(n);

    // row_i += c * row_j  (U likewise; U^-1 gets col_j -= c * col_i)
    auto row_add = [&](std::size_t i, std::size_t j, const V& c) {
        if (ring_.is_zero(c)) return;
        for (std::size_t k = 0; k < n; ++k) {
            if (!ring_.is_zero(a[j][k])) a[i][k] = ring_.add(a[i][k], ring_.mul(c, a[j][k]));
        }
        for (std::size_t k = 0; k < m; ++k) {
            if (!ring_.is_zero(u_[j][k])) u_[i][k] = ring_.add(u_[i][k], ring_.mul(c, u_[j][k]));
            if (!ring_.is_zero(u_inv_[k][i])) u_inv_[k][j] = ring_.sub(u_inv_[k][j], ring_.mul(c, u_inv_[k][i]));
        }
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        std::swap(u_[i], u_[j]);
        for (std::size_t k = 0; k < m; ++k) std::swap(u_inv_[k][i], u_inv_[k][j]);
    };
    auto row_scale = [&](std::size_t i, const V& unit, const V& unit_inv) {
        for (std::size_t k = 0; k < n; ++k) a[i][k] = ring_.mul(unit, a[i][k]);
        for (std::size_t k = 0; k < m; ++k) {
            u_[i][k] = ring_.mul(unit, u_[i][k]);
            u_inv_[k][i] = ring_.mul(u_inv_[k][i], unit_inv);
        }
    };
    // col_i += c * col_j
    auto col_add = [&](std::size_t i, std::size_t j, const V& c) {
        if (ring_.is_zero(c)) return;
        for (std::size_t k = 0; k < m; ++k) {
            if (!ring_.is_zero(a[k][j])) a[k][i] = ring_.add(a[k][i], ring_.mul(c, a[k][j]));
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (!ring_.is_zero(v_[k][j])) v_[k][i] = ring_.add(v_[k][i], ring_.mul(c, v_[k][j]));
        }
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < m; ++k) std::swap(a[k][i], a[k][j]);
        for (std::size_t k = 0; k < n; ++k) std::swap(v_[k][i], v_[k][j]);
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i) {
            for (std::size_t j = t; j < n; ++j) {
                if (ring_.is_zero(a[i][j])) continue;
                if (pi == m || ring_.smaller(a[i][j], a[pi][pj])) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi == m) break;
        row_swap(t, pi);
        col_swap(t, pj);
        while (true) {
            bool changed = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (ring_.is_zero(a[i][t])) continue;
                row_add(i, t, ring_.neg(ring_.quotient(a[i][t], a[t][t])));
                if (!ring_.is_zero(a[i][t])) {
                    row_swap(t, i);
                    changed = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (ring_.is_zero(a[t][j])) continue;
                col_add(j, t, ring_.neg(ring_.quotient(a[t][j], a[t][t])));
                if (!ring_.is_zero(a[t][j])) {
                    col_swap(t, j);
                    changed = true;
                }
            }
            if (changed) continue;
            if constexpr (Ring::needs_divisibility) {
                std::size_t bad = m;
                for (std::size_t i = t + 1; i < m && bad == m; ++i) {
                    for (std::size_t j = t + 1; j < n; ++j) {
                        if (!ring_.divides(a[t][t], a[i][j])) {
                            bad = i;
                            break;
                        }
                    }
                }
                if (bad != m) {
                    row_add(t, bad, one);
                    continue;
                }
            }
            break;
        }
        const auto [norm, unit] = ring_.normalize(a[t][t]);
        if (!(unit == one)) row_scale(t, unit, unit);
        diag_.push_back(a[t][t]);
    }
    residual_.clear();
}

} // namespace qmcoh
