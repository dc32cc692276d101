#ifndef TREELAB_RATIONAL_HPP
#define TREELAB_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace treelab {

// Exact rational on 64-bit numerator/denominator with 128-bit intermediates.
// Big enough for ordering-enumeration statistics (denominators up to 12!^2);
// throws rather than silently overflowing.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rational r;
        r.num = checked_narrow(n);
        r.den = checked_narrow(d);
        return r;
    }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    Rational operator+(const Rational& o) const {
        return from_i128(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                         static_cast<__int128>(den) * o.den);
    }
    Rational operator-(const Rational& o) const {
        return from_i128(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                         static_cast<__int128>(den) * o.den);
    }
    Rational operator*(const Rational& o) const {
        return from_i128(static_cast<__int128>(num) * o.num,
                         static_cast<__int128>(den) * o.den);
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(static_cast<__int128>(num) * o.den,
                         static_cast<__int128>(den) * o.num);
    }
    Rational operator-() const {
        Rational r;
        r.num = -num;
        r.den = den;
        return r;
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

  private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static long long checked_narrow(__int128 value) {
        if (value > static_cast<__int128>(0x7fffffffffffffffLL) ||
            value < -static_cast<__int128>(0x7fffffffffffffffLL) - 1)
            throw std::overflow_error("Rational: 64-bit overflow after reduction");
        return static_cast<long long>(value);
    }
};

}  // namespace treelab

#endif
