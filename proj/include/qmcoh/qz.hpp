#pragma once

#include "qmcoh/integer.hpp"

#include <iosfwd>
#include <string>

namespace qmcoh {

/// An element of Q/Z stored as a reduced fraction num/den with 0 <= num < den.
/// Zero is 0/1. Written additively; it models the roots of unity in K^x.
class QZValue {
public:
    QZValue() = default;
    /// Reduces any fraction (den != 0) into canonical form.
    QZValue(const Integer& num, const Integer& den);
    explicit QZValue(const Rational& r) : QZValue(numerator(r), denominator(r)) {}

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    /// Representative in [0, 1).
    Rational lift() const { return Rational(num_, den_); }

    friend QZValue operator+(const QZValue& a, const QZValue& b);
    friend QZValue operator-(const QZValue& a, const QZValue& b) { return a + (-b); }
    QZValue operator-() const;
    QZValue& operator+=(const QZValue& o) { return *this = *this + o; }
    QZValue& operator-=(const QZValue& o) { return *this = *this - o; }

    friend bool operator==(const QZValue&, const QZValue&) = default;

    std::string to_string() const;

private:
    Integer num_ = 0;
    Integer den_ = 1;
};

inline QZValue add(const QZValue& a, const QZValue& b) { return a + b; }
inline QZValue neg(const QZValue& a) { return -a; }
/// k-fold sum of a (negative k scales the inverse).
QZValue scale(const Integer& k, const QZValue& a);

/// Parses "num/den" or a bare integer ("0"). Throws InputError.
QZValue parse_qz(const std::string& text);

std::ostream& operator<<(std::ostream& out, const QZValue& v);

} // namespace qmcoh
