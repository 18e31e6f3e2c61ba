#include "qmcoh/factor_cache.hpp"

#include "qmcoh/bar_complex.hpp"

#include <list>
#include <mutex>

namespace qmcoh {

namespace {

auto to_int = [](const auto& v) { return to_integer(v); };
auto to_rat = [](const auto& v) { return Rational(to_integer(v)); };

} // namespace

IntegerFactorization::IntegerFactorization(const SparseMatrix& a)
    : f_(std::in_place_index<0>, IntegerRing<CheckedInt>{}, a) {}

IntegerFactorization::IntegerFactorization(const SparseMatrix& a, Bignum)
    : f_(std::in_place_index<1>, IntegerRing<Integer>{}, a) {}

std::uint32_t IntegerFactorization::rows() const {
    return std::visit([](const auto& f) { return f.rows(); }, f_);
}

std::uint32_t IntegerFactorization::cols() const {
    return std::visit([](const auto& f) { return f.cols(); }, f_);
}

std::size_t IntegerFactorization::rank() const {
    return std::visit([](const auto& f) { return f.rank(); }, f_);
}

std::vector<Integer> IntegerFactorization::dense_diagonal() const {
    return std::visit(
        [](const auto& f) {
            std::vector<Integer> out;
            for (const auto& d : f.dense_diagonal()) out.push_back(to_integer(d));
            return out;
        },
        f_);
}

std::optional<std::vector<Integer>> IntegerFactorization::solve(std::vector<Integer> b) const {
    return std::visit([&](const auto& f) { return f.solve(IntegerOps{}, to_int, std::move(b)); }, f_);
}

std::optional<std::vector<Rational>> IntegerFactorization::solve_rational(std::vector<Rational> b) const {
    return std::visit([&](const auto& f) { return f.solve(RationalOps{}, to_rat, std::move(b)); }, f_);
}

std::vector<Integer> IntegerFactorization::cokernel_generator(std::size_t i) const {
    return std::visit([&](const auto& f) { return f.cokernel_generator(IntegerOps{}, to_int, i); }, f_);
}

std::optional<std::vector<Integer>> IntegerFactorization::reduce(std::vector<Integer> b) const {
    return std::visit(
        [&](const auto& f) -> std::optional<std::vector<Integer>> {
            f.forward(IntegerOps{}, to_int, b);
            for (std::uint32_t r : f.zero_rows()) {
                if (b[r] != 0) return std::nullopt;
            }
            return f.apply_u(IntegerOps{}, to_int, b);
        },
        f_);
}

namespace {

struct CacheKey {
    std::vector<Elem> table;
    int degree;
    std::uint64_t modulus; // 0 for Z

    bool operator==(const CacheKey&) const = default;
};

template <class F>
struct Cache {
    std::mutex mutex;
    std::list<std::pair<CacheKey, std::shared_ptr<const F>>> entries; // most recent first
    static constexpr std::size_t capacity = 6;

    std::shared_ptr<const F> lookup(const CacheKey& key) {
        std::lock_guard lock(mutex);
        for (auto it = entries.begin(); it != entries.end(); ++it) {
            if (it->first == key) {
                entries.splice(entries.begin(), entries, it);
                return entries.front().second;
            }
        }
        return nullptr;
    }

    void insert(CacheKey key, std::shared_ptr<const F> f) {
        std::lock_guard lock(mutex);
        entries.emplace_front(std::move(key), std::move(f));
        while (entries.size() > capacity) entries.pop_back();
    }

    void clear() {
        std::lock_guard lock(mutex);
        entries.clear();
    }
};

Cache<IntegerFactorization>& integer_cache() {
    static Cache<IntegerFactorization> c;
    return c;
}

Cache<ModFactorization>& modular_cache() {
    static Cache<ModFactorization> c;
    return c;
}

CacheKey make_key(const FiniteGroup& g, int degree, std::uint64_t modulus) {
    auto t = g.table();
    return {std::vector<Elem>(t.begin(), t.end()), degree, modulus};
}

} // namespace

std::shared_ptr<const IntegerFactorization> integer_coboundary_factorization(const FiniteGroup& g, int degree) {
    CacheKey key = make_key(g, degree, 0);
    if (auto hit = integer_cache().lookup(key)) return hit;
    const SparseMatrix a = coboundary_matrix(g, degree);
    std::shared_ptr<const IntegerFactorization> f;
    try {
        f = std::make_shared<const IntegerFactorization>(a);
    } catch (const Overflow&) {
        f = std::make_shared<const IntegerFactorization>(a, IntegerFactorization::Bignum{});
    }
    integer_cache().insert(std::move(key), f);
    return f;
}

std::shared_ptr<const ModFactorization> modular_coboundary_factorization(const FiniteGroup& g, int degree,
                                                                         std::uint64_t modulus) {
    CacheKey key = make_key(g, degree, modulus);
    if (auto hit = modular_cache().lookup(key)) return hit;
    auto f = std::make_shared<const ModFactorization>(ModRing(modulus), coboundary_matrix(g, degree));
    modular_cache().insert(std::move(key), f);
    return f;
}

void clear_factorization_cache() {
    integer_cache().clear();
    modular_cache().clear();
}

} // namespace qmcoh
