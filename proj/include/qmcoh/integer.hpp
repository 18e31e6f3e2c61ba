#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmcoh {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown by CheckedInt when a result leaves the int64 range; callers retry
/// the whole computation with Integer.
struct Overflow : std::overflow_error {
    Overflow() : std::overflow_error("int64 overflow") {}
};

/// int64 with overflow-trapping arithmetic. Exact elimination runs on this
/// first because bar-complex entries almost never grow.
class CheckedInt {
public:
    constexpr CheckedInt() = default;
    constexpr CheckedInt(std::int64_t v) : v_(v) {} // NOLINT(implicit)

    explicit CheckedInt(const Integer& v) {
        if (v > Integer(INT64_MAX) || v < Integer(INT64_MIN)) throw Overflow{};
        v_ = static_cast<std::int64_t>(v);
    }

    constexpr std::int64_t value() const { return v_; }
    explicit operator Integer() const { return Integer(v_); }

    friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow{};
        return r;
    }
    friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow{};
        return r;
    }
    friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow{};
        return r;
    }
    friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
        if (b.v_ == -1 && a.v_ == INT64_MIN) throw Overflow{};
        return a.v_ / b.v_;
    }
    friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
        if (b.v_ == -1) return 0;
        return a.v_ % b.v_;
    }
    CheckedInt operator-() const {
        if (v_ == INT64_MIN) throw Overflow{};
        return -v_;
    }
    CheckedInt& operator+=(CheckedInt o) { return *this = *this + o; }
    CheckedInt& operator-=(CheckedInt o) { return *this = *this - o; }
    CheckedInt& operator*=(CheckedInt o) { return *this = *this * o; }

    friend constexpr bool operator==(CheckedInt a, CheckedInt b) = default;
    friend constexpr auto operator<=>(CheckedInt a, CheckedInt b) = default;

private:
    std::int64_t v_ = 0;
};

inline CheckedInt abs(CheckedInt a) { return a < CheckedInt(0) ? -a : a; }

inline Integer to_integer(const Integer& v) { return v; }
inline Integer to_integer(CheckedInt v) { return Integer(v.value()); }

/// Floor division and non-negative remainder for a positive modulus.
inline Integer floor_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

/// Parses an optionally signed decimal integer; throws InputError-compatible
/// std::invalid_argument on failure.
Integer parse_integer(const std::string& text);

} // namespace qmcoh
