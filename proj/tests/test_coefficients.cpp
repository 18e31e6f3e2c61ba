#include "qmcoh/errors.hpp"
#include "qmcoh/qz.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace qmcoh;

TEST_CASE("Q/Z arithmetic examples") {
    CHECK(add(QZValue(1, 2), QZValue(1, 2)) == QZValue(0, 1));
    CHECK(add(QZValue(1, 3), QZValue(1, 2)) == QZValue(5, 6));
    CHECK(scale(4, QZValue(1, 4)).is_zero());
    CHECK(neg(QZValue(1, 3)) == QZValue(2, 3));
    CHECK(scale(-1, QZValue(1, 3)) == QZValue(2, 3));
    CHECK(QZValue(7, 4) == QZValue(3, 4));
    CHECK(QZValue(-1, 4) == QZValue(3, 4));
    CHECK(QZValue(2, -4) == QZValue(1, 2));
    CHECK(QZValue(6, 3).den() == 1);
}

TEST_CASE("text form") {
    CHECK(parse_qz("3/8") == QZValue(3, 8));
    CHECK(parse_qz("0").is_zero());
    CHECK(parse_qz("11/8") == QZValue(3, 8));
    CHECK(parse_qz("-1/2") == QZValue(1, 2));
    CHECK(QZValue(3, 8).to_string() == "3/8");
    CHECK(QZValue().to_string() == "0");
    CHECK_THROWS_AS(parse_qz("1/0"), InputError);
    CHECK_THROWS_AS(parse_qz("abc"), InputError);
    CHECK_THROWS_AS(parse_qz("1/2/3"), InputError);
    CHECK_THROWS_AS(parse_qz(""), InputError);
    std::ostringstream s;
    s << QZValue(5, 6);
    CHECK(s.str() == "5/6");
}

TEST_CASE("random operation chains stay reduced and satisfy the group axioms") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> den(1, 60), pick(0, 3);
    auto draw = [&] {
        const int d = den(rng);
        return QZValue(std::uniform_int_distribution<int>(-3 * d, 3 * d)(rng), d);
    };
    auto reduced = [](const QZValue& v) {
        return v.num() >= 0 && v.num() < v.den() && boost::multiprecision::gcd(v.num(), v.den()) == 1;
    };
    for (int chain = 0; chain < 200; ++chain) {
        QZValue acc = draw();
        for (int step = 0; step < 20; ++step) {
            const QZValue b = draw();
            switch (pick(rng)) {
            case 0: acc = acc + b; break;
            case 1: acc = acc - b; break;
            case 2: acc = -acc; break;
            default: acc = scale(std::uniform_int_distribution<int>(-5, 5)(rng), acc); break;
            }
            REQUIRE(reduced(acc));
        }
        const QZValue a = draw(), b = draw(), c = draw();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a + QZValue() == a);
        CHECK((a + (-a)).is_zero());
        CHECK(scale(a.den(), a).is_zero());
        CHECK(scale(3, a) == a + a + a);
        CHECK(a.lift() >= 0);
        CHECK(a.lift() < 1);
    }
}
