#ifndef PGT_RATIONAL_HPP
#define PGT_RATIONAL_HPP

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>

#include "pgt/errors.hpp"

namespace pgt {

// Exact rational arithmetic on int64 numerator/denominator.  All exponent
// bookkeeping in the smoothing plans is done in this type so that equalities
// like 7/10 == 7/10 are exact, not approximate.  Intermediate products are
// taken in __int128 and checked against the int64 range; overflow throws
// instead of silently wrapping.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "p/q", or just "p" when the denominator is 1.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p", "p/q", optional leading minus on either part.
    static Rational parse(const std::string& text) {
        auto parse_int = [](const std::string& s) -> std::int64_t {
            if (s.empty()) throw ValidationError("bad rational: empty component");
            char* end = nullptr;
            errno = 0;
            long long v = std::strtoll(s.c_str(), &end, 10);
            if (errno != 0 || end != s.c_str() + s.size())
                throw ValidationError("bad rational component: '" + s + "'");
            return static_cast<std::int64_t>(v);
        };
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(parse_int(text));
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw ValidationError("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw ValidationError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lo = static_cast<__int128>(INT64_MIN);
        constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
        if (n < lo || n > hi || d > hi)
            throw ValidationError("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void normalize() {
        Rational r = make(i128(num_), i128(den_));
        num_ = r.num_;
        den_ = r.den_;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace pgt

#endif
