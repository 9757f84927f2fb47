#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace levi6 {

struct RationalOverflow : std::runtime_error {
    RationalOverflow() : std::runtime_error("rational overflow") {}
};

// Exact rational with 64-bit numerator/denominator, always normalized
// (den > 0, gcd(num,den) == 1). Arithmetic goes through 128-bit
// intermediates and throws RationalOverflow if the reduced result does
// not fit; callers then keep the unfolded expression node.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    void assign(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw RationalOverflow();
        num = static_cast<std::int64_t>(n);
        den = static_cast<std::int64_t>(d);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    bool is_zero() const { return num == 0; }
    bool is_one() const { return num == 1 && den == 1; }
    bool is_integer() const { return den == 1; }

    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        r.assign((__int128)a.num * b.den + (__int128)b.num * a.den,
                 (__int128)a.den * b.den);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        r.assign((__int128)a.num * b.den - (__int128)b.num * a.den,
                 (__int128)a.den * b.den);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        r.assign((__int128)a.num * b.num, (__int128)a.den * b.den);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("rational division by zero");
        Rational r;
        r.assign((__int128)a.num * b.den, (__int128)a.den * b.num);
        return r;
    }
    Rational operator-() const {
        Rational r;
        r.num = -num;
        r.den = den;
        return r;
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }

    // Integer power with small-exponent guard; throws on overflow.
    Rational pow(int e) const {
        if (e < 0) {
            if (num == 0) throw std::domain_error("zero to negative power");
            Rational inv(den, num);
            return inv.pow(-e);
        }
        Rational acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace levi6
