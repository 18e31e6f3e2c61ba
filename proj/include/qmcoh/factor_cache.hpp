#pragma once

#include "qmcoh/elimination.hpp"
#include "qmcoh/group.hpp"
#include "qmcoh/integer.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace qmcoh {

/// Exact integers as right-hand-side arithmetic for integer factorizations.
struct IntegerOps {
    using value_type = Integer;
    bool is_zero(const Integer& v) const { return v == 0; }
    Integer add(const Integer& a, const Integer& b) const { return a + b; }
    Integer sub(const Integer& a, const Integer& b) const { return a - b; }
    Integer mul(const Integer& a, const Integer& b) const { return a * b; }
    std::optional<Integer> solve_scalar(const Integer& d, const Integer& y) const {
        if (y % d != 0) return std::nullopt;
        return y / d;
    }
};

/// Factorization over Z, on int64 entries or (Bignum) on Integer entries.
class IntegerFactorization {
public:
    struct Bignum {};
    /// Throws Overflow if int64 entries do not suffice.
    explicit IntegerFactorization(const SparseMatrix& a);
    IntegerFactorization(const SparseMatrix& a, Bignum);

    std::uint32_t rows() const;
    std::uint32_t cols() const;
    std::size_t rank() const;
    bool used_bignum() const { return f_.index() == 1; }
    std::vector<Integer> dense_diagonal() const;

    std::optional<std::vector<Integer>> solve(std::vector<Integer> b) const;
    std::optional<std::vector<Rational>> solve_rational(std::vector<Rational> b) const;
    std::vector<Integer> cokernel_generator(std::size_t i) const;

    /// Image of b in the dense block after U is applied, or nullopt when b
    /// has a nonzero component on a row eliminated to zero.
    std::optional<std::vector<Integer>> reduce(std::vector<Integer> b) const;

private:
    std::variant<Factorization<IntegerRing<CheckedInt>>, Factorization<IntegerRing<Integer>>> f_;
};

using ModFactorization = Factorization<ModRing>;

/// Factorizations of the degree-n coboundary matrix of a group, cached by
/// (multiplication table, degree, modulus). A small number of recent entries
/// is kept; evicted entries stay alive while callers hold them.
std::shared_ptr<const IntegerFactorization> integer_coboundary_factorization(const FiniteGroup& g, int degree);
std::shared_ptr<const ModFactorization> modular_coboundary_factorization(const FiniteGroup& g, int degree,
                                                                         std::uint64_t modulus);
void clear_factorization_cache();

} // namespace qmcoh
