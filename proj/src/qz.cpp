#include "qmcoh/qz.hpp"

#include "qmcoh/errors.hpp"

#include <ostream>

namespace qmcoh {

Integer parse_integer(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) throw InputError("malformed integer '" + text + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] < '0' || text[k] > '9') throw InputError("malformed integer '" + text + "'");
    }
    Integer v(text[0] == '+' ? text.substr(1) : text);
    return v;
}

QZValue::QZValue(const Integer& num, const Integer& den) {
    if (den == 0) throw InputError("zero denominator");
    Integer n = den < 0 ? Integer(-num) : num;
    Integer d = den < 0 ? Integer(-den) : den;
    n = floor_mod(n, d);
    const Integer g = gcd(n, d);
    if (n == 0) {
        num_ = 0;
        den_ = 1;
    } else {
        num_ = n / g;
        den_ = d / g;
    }
}

QZValue operator+(const QZValue& a, const QZValue& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return QZValue(a.num_ + b.num_, a.den_);
    return QZValue(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QZValue QZValue::operator-() const {
    if (is_zero()) return *this;
    QZValue r;
    r.num_ = den_ - num_;
    r.den_ = den_;
    return r;
}

QZValue scale(const Integer& k, const QZValue& a) { return QZValue(k * a.num(), a.den()); }

std::string QZValue::to_string() const {
    if (is_zero()) return "0";
    return num_.str() + "/" + den_.str();
}

QZValue parse_qz(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return QZValue(parse_integer(text), 1);
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den <= 0) throw InputError("denominator must be positive in '" + text + "'");
    return QZValue(parse_integer(text.substr(0, slash)), den);
}

std::ostream& operator<<(std::ostream& out, const QZValue& v) { return out << v.to_string(); }

} // namespace qmcoh
