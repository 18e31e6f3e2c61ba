#include "qmcoh/cochain.hpp"
#include "qmcoh/errors.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace qmcoh;
using qmcoh::testing::Rng;

namespace {

std::vector<std::string> small_groups() {
    std::vector<std::string> out;
    for (const auto& label : standard_catalog_labels()) {
        if (catalog_group(label).order() <= 8) out.push_back(label);
    }
    return out;
}

// Direct evaluation of the alternating sum, independent of the library's
// dense implementation.
QZValue coboundary_at(const Cochain& f, const std::vector<Elem>& t) {
    const FiniteGroup& g = f.group();
    const int n = f.degree();
    QZValue acc = f.qz_at(std::span(t).subspan(1));
    for (int i = 1; i <= n; ++i) {
        std::vector<Elem> face;
        for (int k = 0; k <= n; ++k) {
            if (k == i) continue;
            face.push_back(k == i - 1 ? g.mul(t[i - 1], t[i]) : t[k]);
        }
        acc = (i % 2 == 0) ? acc + f.qz_at(face) : acc - f.qz_at(face);
    }
    const QZValue last = f.qz_at(std::span(t).first(n));
    return ((n + 1) % 2 == 0) ? acc + last : acc - last;
}

} // namespace

TEST_CASE("tuple indexing is lexicographic") {
    const TupleIndexer ix(4, 3);
    CHECK(ix.size() == 27);
    std::vector<Elem> t(3, 1), back(3);
    std::uint64_t expect = 0;
    do {
        CHECK(ix.index(t) == expect);
        ix.decode(expect, back);
        CHECK(back == t);
        ++expect;
    } while (next_tuple(t, 4));
    CHECK(expect == 27);
}

TEST_CASE("coboundary examples") {
    const FiniteGroup z2 = catalog_group("cyclic:2");
    for (int n = 0; n <= 4; ++n) CHECK(coboundary(Cochain(z2, n, CoeffKind::qz)).is_zero());

    Cochain f(z2, 1, CoeffKind::qz);
    f.set(std::vector<Elem>{1}, QZValue(1, 2));
    CHECK(coboundary(f).qz_at(std::vector<Elem>{1, 1}).is_zero());

    const FiniteGroup z4 = catalog_group("cyclic:4");
    Cochain h(z4, 1, CoeffKind::qz);
    h.set(std::vector<Elem>{1}, QZValue(1, 4));
    CHECK(coboundary(h).qz_at(std::vector<Elem>{1, 1}) == QZValue(1, 2));

    Cochain w(z2, 3, CoeffKind::qz);
    w.set(std::vector<Elem>{1, 1, 1}, QZValue(1, 2));
    CHECK(is_cocycle(w));
    // only one normalized 4-tuple on Z/2
    CHECK(coboundary_at(w, {1, 1, 1, 1}).is_zero());
}

TEST_CASE("normalization and identity arguments") {
    const FiniteGroup z3 = catalog_group("cyclic:3");
    Cochain f(z3, 2, CoeffKind::qz);
    CHECK(f.qz_at(std::vector<Elem>{0, 1}).is_zero());
    CHECK_THROWS_AS(f.set(std::vector<Elem>{0, 1}, QZValue(1, 3)), InputError);
    f.set(std::vector<Elem>{0, 1}, QZValue());
    CHECK(f.is_zero());
    CHECK_THROWS_AS(f.int_at(std::vector<Elem>{1, 1}), InputError);
}

TEST_CASE("library coboundary matches the formula entrywise") {
    Rng rng(11);
    for (const auto& label : {"cyclic:3", "sym:3", "elem:2^2", "quaternion:8"}) {
        const FiniteGroup g = catalog_group(label);
        for (int n = 0; n <= 3; ++n) {
            const Cochain f = testing::random_cochain(g, n, rng);
            const Cochain df = coboundary(f);
            std::vector<Elem> t(n + 1, 1);
            do {
                REQUIRE(df.qz_at(t) == coboundary_at(f, t));
            } while (next_tuple(t, g.order()));
        }
    }
}

TEST_CASE("dd = 0 on groups of order at most 8") {
    Rng rng(12);
    for (const auto& label : small_groups()) {
        CAPTURE(label);
        const FiniteGroup g = catalog_group(label);
        for (int n = 0; n <= 4; ++n) {
            CHECK(coboundary(coboundary(testing::random_cochain(g, n, rng))).is_zero());
            CHECK(coboundary(coboundary(testing::random_int_cochain(g, n, rng))).is_zero());
        }
    }
}

TEST_CASE("coboundary is linear and commutes with pullback") {
    Rng rng(13);
    const std::vector<std::pair<std::string, std::string>> maps = {
        {"cyclic:4", "cyclic:2"}, {"dihedral:4", "elem:2^2"}, {"sym:3", "cyclic:2"},
        {"quaternion:8", "elem:2^2"}, {"cyclic:6", "cyclic:3"}};
    for (const auto& [s, t] : maps) {
        const auto homs = enumerate_surjections(catalog_group(s), catalog_group(t));
        REQUIRE(!homs.empty());
        for (int n = 0; n <= 3; ++n) {
            const Cochain f = testing::random_cochain(catalog_group(t), n, rng);
            for (const auto& h : homs) CHECK(pullback(h, coboundary(f)) == coboundary(pullback(h, f)));
        }
    }
    const FiniteGroup g = catalog_group("dihedral:3");
    for (int n = 0; n <= 3; ++n) {
        const Cochain f = testing::random_cochain(g, n, rng);
        const Cochain h = testing::random_cochain(g, n, rng);
        CHECK(coboundary(add_cochains(f, h)) == add_cochains(coboundary(f), coboundary(h)));
        CHECK(add_cochains(f, negate(f)).is_zero());
        CHECK(subtract_cochains(f, f).is_zero());
        CHECK(pullback(GroupHom::identity(g), f) == f);
        CHECK(pullback(GroupHom::identity(g), Cochain(g, n, CoeffKind::qz)).is_zero());
        CHECK(scale_cochain(3, f) == add_cochains(f, add_cochains(f, f)));
    }
}

TEST_CASE("pullback through the identity reads zero") {
    // Z/4 -> Z/2 sends the square of the generator to the identity.
    const auto p = enumerate_surjections(catalog_group("cyclic:4"), catalog_group("cyclic:2")).front();
    Cochain f(catalog_group("cyclic:2"), 1, CoeffKind::qz);
    f.set(std::vector<Elem>{1}, QZValue(1, 2));
    const Cochain pf = pullback(p, f);
    CHECK(pf.qz_at(std::vector<Elem>{2}).is_zero());
    CHECK(pf.qz_at(std::vector<Elem>{1}) == QZValue(1, 2));
    CHECK(pf.qz_at(std::vector<Elem>{3}) == QZValue(1, 2));
}

TEST_CASE("mismatched operands are rejected") {
    const FiniteGroup a = catalog_group("cyclic:3");
    const FiniteGroup b = catalog_group("cyclic:4");
    CHECK_THROWS_AS(add_cochains(Cochain(a, 2, CoeffKind::qz), Cochain(b, 2, CoeffKind::qz)), InputError);
    CHECK_THROWS_AS(add_cochains(Cochain(a, 2, CoeffKind::qz), Cochain(a, 3, CoeffKind::qz)), InputError);
    CHECK_THROWS_AS(add_cochains(Cochain(a, 2, CoeffKind::qz), Cochain(a, 2, CoeffKind::integer)), InputError);
    CHECK_THROWS_AS(pullback(GroupHom::identity(a), Cochain(b, 2, CoeffKind::qz)), InputError);
}

TEST_CASE("conversions between Z and Q/Z cochains") {
    Rng rng(14);
    const FiniteGroup g = catalog_group("sym:3");
    const Cochain f = testing::random_cochain(g, 2, rng);
    const Integer l = denominator_lcm(f);
    const Cochain num = qz_numerators(f, l);
    CHECK(integer_to_qz(num, l) == f);
    const Cochain k = testing::random_int_cochain(g, 2, rng);
    CHECK(from_dense(g, 2, to_dense(k)) == k);
}

TEST_CASE("cochain text format") {
    Rng rng(15);
    const Cochain f = testing::random_cochain(catalog_group("dihedral:3"), 2, rng);
    std::stringstream s;
    write_cochain(s, f);
    CHECK(parse_cochain(s) == f);

    const Cochain k = testing::random_int_cochain(catalog_group("cyclic:3"), 3, rng);
    std::stringstream t;
    write_cochain(t, k);
    CHECK(parse_cochain(t) == k);

    // a group without a catalog label is written inline
    const FiniteGroup odd = catalog_group("cyclic:3").renamed("three");
    Cochain h(odd, 1, CoeffKind::qz);
    h.set(std::vector<Elem>{2}, QZValue(1, 3));
    std::stringstream u;
    write_cochain(u, h);
    CHECK(u.str().find("group inline") != std::string::npos);
    CHECK(parse_cochain(u) == h);

    std::istringstream dup("cochain\ngroup cyclic:3\ndegree 1\ncoeff qz\nentry 1 1/3\nentry 1 2/3\nend\n");
    CHECK_THROWS_AS(parse_cochain(dup), InputError);
    std::istringstream ident("cochain\ngroup cyclic:3\ndegree 1\ncoeff qz\nentry 0 1/3\nend\n");
    CHECK_THROWS_AS(parse_cochain(ident), InputError);
    std::istringstream arity("cochain\ngroup cyclic:3\ndegree 2\ncoeff qz\nentry 1 1/3\nend\n");
    CHECK_THROWS_AS(parse_cochain(arity), InputError);
    std::istringstream unterminated("cochain\ngroup cyclic:3\ndegree 1\ncoeff qz\n");
    CHECK_THROWS_AS(parse_cochain(unterminated), InputError);
    std::istringstream empty("cochain\ngroup cyclic:3\ndegree 0\ncoeff int\nend\n");
    CHECK(parse_cochain(empty).is_zero());
    std::istringstream zero_degree("cochain\ngroup cyclic:3\ndegree 0\ncoeff int\nentry 5\nend\n");
    CHECK(parse_cochain(zero_degree).int_at(std::vector<Elem>{}) == 5);
}
