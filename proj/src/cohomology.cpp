#include "qmcoh/cohomology.hpp"

#include "qmcoh/bar_complex.hpp"
#include "qmcoh/errors.hpp"
#include "qmcoh/factor_cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

namespace qmcoh {

namespace {

std::uint64_t power_u64(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

void require_same_group(const FiniteGroup& a, const FiniteGroup& b) {
    if (!a.same_table(b)) throw InputError("cochain lives on a different group");
}

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int valuation(std::uint64_t v, std::uint64_t p) {
    int e = 0;
    while (v != 0 && v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

// Expected rank of d_n over Q: H^k(G,Q) = 0 for k >= 1 and d_0 = 0.
std::uint64_t expected_rank(const FiniteGroup& g, int degree) {
    std::uint64_t r = 0;
    for (int k = 1; k <= degree; ++k) r = cochain_dimension(g, k) - r;
    return r;
}

std::vector<Integer> integral_bockstein_dense(const Cochain& f) {
    const Integer scale = denominator_lcm(f);
    const Cochain lifted = qz_numerators(f, scale);
    std::vector<Integer> z = to_dense(coboundary(lifted));
    for (auto& v : z) {
        if (v % scale != 0) throw InputError("cochain is not a cocycle");
        v /= scale;
    }
    return z;
}

} // namespace

std::uint64_t size_budget() {
    if (const char* env = std::getenv("QMCOH_SIZE_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultSizeBudget;
}

void check_budget(const FiniteGroup& g, int degree) {
    const std::uint64_t rows = power_u64(static_cast<std::uint64_t>(g.order() - 1), degree + 1);
    const std::uint64_t budget = size_budget();
    if (rows > budget) {
        throw BudgetError("size budget exceeded: coboundary matrix C^" + std::to_string(degree) + " -> C^" +
                          std::to_string(degree + 1) + " of " + g.name() + " has " + std::to_string(rows) +
                          " rows and " +
                          std::to_string(power_u64(static_cast<std::uint64_t>(g.order() - 1), degree)) +
                          " columns; budget is " + std::to_string(budget) + " rows");
    }
}

CohomologyGroup compute_cohomology(const FiniteGroup& g, int degree) {
    if (degree < 1) throw InputError("cohomology degree must be at least 1");
    check_budget(g, degree);
    auto f = integer_coboundary_factorization(g, degree);

    CohomologyGroup h{g, degree, {}, {}, f->rows(), f->cols(), f->rank()};
    if (f->rank() != expected_rank(g, degree)) {
        throw InternalError("integral cohomology of degree " + std::to_string(degree + 1) +
                            " has nonzero free rank (rank " + std::to_string(f->rank()) + ", expected " +
                            std::to_string(expected_rank(g, degree)) + ")");
    }
    const std::vector<Integer> diag = f->dense_diagonal();
    const Integer order = g.order();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] == 1) continue;
        std::vector<Integer> z = f->cokernel_generator(i);
        for (auto& v : z) v *= order;
        auto w = f->solve(std::move(z));
        if (!w) throw InternalError("cohomology class is not killed by the group order");
        h.invariant_factors.push_back(diag[i]);
        h.generators.push_back(integer_to_qz(from_dense(g, degree, *w), order));
    }
    return h;
}

Cochain bockstein(const Cochain& f) {
    if (f.kind() != CoeffKind::qz) throw InputError("expected a Q/Z cochain");
    return from_dense(f.group(), f.degree() + 1, integral_bockstein_dense(f));
}

bool is_coboundary(const Cochain& f, CoboundaryMethod method) {
    if (f.kind() != CoeffKind::qz) throw InputError("expected a Q/Z cochain");
    if (!is_cocycle(f)) throw InputError("cochain is not a cocycle");
    if (f.degree() == 0) return f.is_zero();
    if (f.is_zero()) return true;
    if (method == CoboundaryMethod::bounded_denominator) return bounded_denominator_primitive(f).has_value();
    check_budget(f.group(), f.degree());
    auto fac = integer_coboundary_factorization(f.group(), f.degree());
    return fac->solve(integral_bockstein_dense(f)).has_value();
}

std::optional<Cochain> bounded_denominator_primitive(const Cochain& f) {
    if (f.kind() != CoeffKind::qz) throw InputError("expected a Q/Z cochain");
    const FiniteGroup& g = f.group();
    const int n = f.degree();
    if (n == 0) {
        if (f.is_zero()) return Cochain(g, 0, CoeffKind::qz);
        return std::nullopt;
    }
    Cochain zero(g, n - 1, CoeffKind::qz);
    if (f.is_zero()) return zero;
    check_budget(g, n - 1);
    const Integer modulus = denominator_lcm(f) * g.order();
    if (modulus >= (Integer(1) << 62)) throw BudgetError("denominators too large for modular elimination");
    const auto m = static_cast<std::uint64_t>(modulus);
    auto fac = modular_coboundary_factorization(g, n - 1, m);
    std::vector<std::uint64_t> b(f.indexer().size(), 0);
    for (const auto& [idx, v] : f.qz_entries()) b[idx] = static_cast<std::uint64_t>(v.num() * (modulus / v.den()));
    const ModRing& ring = fac->ring();
    auto x = fac->solve(ring, [](std::uint64_t v) { return v; }, std::move(b));
    if (!x) return std::nullopt;
    for (std::uint64_t i = 0; i < x->size(); ++i) {
        if ((*x)[i] != 0) zero.set_index(i, QZValue(Integer((*x)[i]), modulus));
    }
    return zero;
}

ClassCoordinates class_coordinates(const Cochain& f, const CohomologyGroup& h) {
    if (f.kind() != CoeffKind::qz) throw InputError("expected a Q/Z cochain");
    require_same_group(f.group(), h.group);
    if (f.degree() != h.degree) throw InputError("cochain degree does not match the cohomology group");
    if (!is_cocycle(f)) throw InputError("cochain is not a cocycle");
    ClassCoordinates out;
    out.coords.assign(h.invariant_factors.size(), 0);
    if (h.trivial()) return out;

    auto fac = integer_coboundary_factorization(h.group, h.degree);
    auto y = fac->reduce(integral_bockstein_dense(f));
    if (!y) throw InternalError("Bockstein image has a free component");
    const std::vector<Integer> diag = fac->dense_diagonal();
    for (std::size_t i = diag.size(); i < y->size(); ++i) {
        if ((*y)[i] != 0) throw InternalError("Bockstein image has a free component");
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] == 1) continue;
        out.coords[k] = floor_mod((*y)[i], diag[i]);
        ++k;
    }
    return out;
}

ClassCoordinates normalize_coordinates(const CohomologyGroup& h, std::vector<Integer> coords) {
    if (coords.size() > h.invariant_factors.size()) {
        throw InputError("expected at most " + std::to_string(h.invariant_factors.size()) +
                         " class coordinates, got " + std::to_string(coords.size()));
    }
    coords.resize(h.invariant_factors.size(), 0);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = floor_mod(coords[i], h.invariant_factors[i]);
    return {std::move(coords)};
}

Cochain class_representative(const CohomologyGroup& h, const ClassCoordinates& c) {
    const ClassCoordinates n = normalize_coordinates(h, c.coords);
    Cochain out(h.group, h.degree, CoeffKind::qz);
    for (std::size_t i = 0; i < n.coords.size(); ++i) {
        if (n.coords[i] != 0) out = add_cochains(out, scale_cochain(n.coords[i], h.generators[i]));
    }
    return out;
}

std::vector<Integer> invariant_factors_of(const std::vector<Integer>& cyclic_orders) {
    std::map<std::uint64_t, std::vector<std::uint64_t>> parts; // prime -> prime powers
    for (const auto& c : cyclic_orders) {
        if (c <= 0) throw InternalError("cyclic order must be positive");
        for (auto [p, e] : factor_u64(static_cast<std::uint64_t>(c))) parts[p].push_back(power_u64(p, e));
    }
    std::size_t len = 0;
    for (auto& [p, v] : parts) {
        std::sort(v.rbegin(), v.rend());
        len = std::max(len, v.size());
    }
    std::vector<Integer> out(len, 1);
    for (const auto& [p, v] : parts) {
        for (std::size_t i = 0; i < v.size(); ++i) out[i] *= v[i];
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

struct ModOrders {
    // log_p |ker d| and log_p |im d| over Z/p^k
    int log_kernel;
    int log_image;
};

ModOrders modular_orders(const FiniteGroup& g, int degree, std::uint64_t p, int k) {
    const std::uint64_t q = power_u64(p, k);
    const ModFactorization f(ModRing(q), coboundary_matrix(g, degree));
    int log_image = 0;
    int log_kernel = k * static_cast<int>(f.cols() - f.rank());
    log_image += k * static_cast<int>(f.sparse_pivots());
    for (std::uint64_t d : f.dense_diagonal()) {
        const int v = valuation(d, p);
        log_image += k - v;
        log_kernel += v;
    }
    return {log_kernel, log_image};
}

// |ker| and |im| of d_n over Z/m.
std::pair<Integer, Integer> modular_sizes(const FiniteGroup& g, int degree, std::uint64_t m) {
    const ModFactorization f(ModRing(m), coboundary_matrix(g, degree));
    Integer ker = 1, im = 1;
    for (std::size_t i = 0; i < f.cols() - f.rank(); ++i) ker *= m;
    for (std::size_t i = 0; i < f.sparse_pivots(); ++i) im *= m;
    for (std::uint64_t d : f.dense_diagonal()) {
        const std::uint64_t gcd = std::gcd(d, m);
        ker *= gcd;
        im *= m / gcd;
    }
    return {ker, im};
}

} // namespace

std::vector<std::vector<Integer>> finite_coefficient_cohomology(const FiniteGroup& g, int max_degree) {
    if (max_degree < 1) throw InputError("degree must be at least 1");
    check_budget(g, max_degree);
    const auto m = static_cast<std::uint64_t>(g.order());
    // per degree 1..max_degree: cyclic orders of H^{n+1}(G,Z)
    std::vector<std::vector<Integer>> cyclic(max_degree);
    for (auto [p, e] : factor_u64(m)) {
        // logs[k][n] = log_p |H^n(G, Z/p^k)| for n = 0..max_degree
        std::vector<std::vector<int>> logs(e + 2, std::vector<int>(max_degree + 1, 0));
        for (int k = 1; k <= e + 1; ++k) {
            int prev_image = 0;
            for (int n = 0; n <= max_degree; ++n) {
                const ModOrders o = modular_orders(g, n, p, k);
                logs[k][n] = o.log_kernel - prev_image;
                prev_image = o.log_image;
            }
            if (logs[k][0] != k) throw InternalError("H^0 with finite coefficients has the wrong order");
        }
        // Elementary divisors p^j of H^n(Z) + H^{n+1}(Z), peeled from H^n(Z).
        std::vector<int> lower(e + 1, 0); // multiplicities of p^j in H^n(G,Z); H^1 = 0
        for (int n = 1; n <= max_degree; ++n) {
            std::vector<int> at_least(e + 2, 0);
            for (int k = 1; k <= e + 1; ++k) at_least[k] = logs[k][n] - logs[k - 1][n];
            if (at_least[e + 1] != 0) throw InternalError("finite-coefficient cohomology has exponent above |G|");
            std::vector<int> upper(e + 1, 0);
            for (int j = 1; j <= e; ++j) {
                upper[j] = at_least[j] - at_least[j + 1] - lower[j];
                if (upper[j] < 0) throw InternalError("inconsistent finite-coefficient cohomology orders");
                for (int c = 0; c < upper[j]; ++c) cyclic[n - 1].push_back(Integer(power_u64(p, j)));
            }
            lower = upper;
        }
    }
    std::vector<std::vector<Integer>> out;
    for (const auto& c : cyclic) out.push_back(invariant_factors_of(c));

    // Orders over Z/|G| must match |H^n(Z)| * |H^{n+1}(Z)|.
    if (m > 1) {
        Integer prev_image = 1;
        for (int n = 0; n <= max_degree; ++n) {
            const auto [ker, im] = modular_sizes(g, n, m);
            const Integer order = ker / prev_image;
            prev_image = im;
            Integer expected = n == 0 ? Integer(m) : Integer(1);
            if (n >= 2) {
                for (const auto& d : out[n - 2]) expected *= d;
            }
            if (n >= 1) {
                for (const auto& d : out[n - 1]) expected *= d;
            }
            if (order != expected) throw InternalError("order of H^n(G, Z/|G|) disagrees with the peeled result");
        }
    }
    return out;
}

std::vector<Integer> abelianization_factors(const FiniteGroup& g) {
    std::vector<Elem> commutators;
    for (Elem a = 0; a < g.order(); ++a) {
        for (Elem b = 0; b < g.order(); ++b) {
            commutators.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
        }
    }
    std::sort(commutators.begin(), commutators.end());
    commutators.erase(std::unique(commutators.begin(), commutators.end()), commutators.end());
    const std::vector<Elem> derived = g.generated_subgroup(commutators);
    std::vector<char> in_derived(g.order(), 0);
    for (Elem x : derived) in_derived[x] = 1;

    const auto quotient = static_cast<std::uint64_t>(g.order()) / derived.size();
    std::vector<Integer> cyclic;
    for (auto [p, e] : factor_u64(quotient)) {
        // count_k = |{x in A : p^k x = 0}|, A = G/[G,G]
        std::vector<int> log_count(e + 1, 0);
        for (int k = 1; k <= e; ++k) {
            const std::uint64_t pk = power_u64(p, k);
            std::uint64_t count = 0;
            for (Elem x = 0; x < g.order(); ++x) {
                Elem y = 0;
                for (std::uint64_t i = 0; i < pk; ++i) y = g.mul(y, x);
                if (in_derived[y]) ++count;
            }
            count /= derived.size();
            int l = 0;
            while (count > 1) {
                count /= p;
                ++l;
            }
            log_count[k] = l;
        }
        // number of cyclic factors of order >= p^k is log_count[k] - log_count[k-1]
        for (int k = 1; k <= e; ++k) {
            const int ge_k = log_count[k] - log_count[k - 1];
            const int ge_next = k < e ? log_count[k + 1] - log_count[k] : 0;
            for (int c = 0; c < ge_k - ge_next; ++c) cyclic.push_back(Integer(power_u64(p, k)));
        }
    }
    return invariant_factors_of(cyclic);
}

} // namespace qmcoh
