#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>
#include <string_view>

#include "mwo/error.hpp"

namespace mwo {

/// Exact rational arithmetic for match scores and preference weights.
/// Values are kept normalized (gcd 1, positive denominator). Intermediates
/// use 128-bit arithmetic; results that do not fit back into 64 bits raise
/// Error(Overflow).
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t numerator) : num_(numerator), den_(1) {}
    Rational(std::int64_t numerator, std::int64_t denominator) {
        if (denominator == 0) throw Error(ErrorCode::Overflow, "rational with zero denominator");
        assign(numerator, denominator);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error(ErrorCode::Overflow, "rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "3/4" for proper fractions, "2" for integers.
    std::string to_string() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    /// Fixed two-decimal rendering with half-up rounding, done in integers so
    /// text output never depends on floating point.
    std::string to_fixed2() const {
        bool negative = num_ < 0;
        i128 n = negative ? -i128(num_) : i128(num_);
        i128 scaled = (n * 100 + den_ / 2) / den_;
        std::int64_t whole = static_cast<std::int64_t>(scaled / 100);
        std::int64_t frac = static_cast<std::int64_t>(scaled % 100);
        std::string s = negative ? "-" : "";
        s += std::to_string(whole);
        s += '.';
        if (frac < 10) s += '0';
        s += std::to_string(frac);
        return s;
    }

    /// Parses "2", "0.5" or "3/4". Throws Error(InvalidQuery) on anything else.
    static Rational parse(std::string_view text) {
        auto bad = [&] { return Error(ErrorCode::InvalidQuery, "not a rational: '" + std::string(text) + "'"); };
        if (text.empty()) throw bad();
        size_t slash = text.find('/');
        if (slash != std::string_view::npos) {
            std::int64_t n = parse_int(text.substr(0, slash));
            std::int64_t d = parse_int(text.substr(slash + 1));
            if (d == 0) throw bad();
            return Rational(n, d);
        }
        size_t dot = text.find('.');
        if (dot == std::string_view::npos) return Rational(parse_int(text));
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 18) throw bad();
        bool negative = !whole.empty() && whole.front() == '-';
        std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
        std::int64_t den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        std::int64_t f = parse_int(frac);
        if (f < 0) throw bad();
        i128 n = i128(w) * den + (negative ? -i128(f) : i128(f));
        return make(n, den);
    }

private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw Error(ErrorCode::Overflow, "rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    static std::int64_t parse_int(std::string_view s) {
        if (s.empty()) throw Error(ErrorCode::InvalidQuery, "empty number");
        bool negative = s.front() == '-';
        size_t i = negative ? 1 : 0;
        if (i == s.size()) throw Error(ErrorCode::InvalidQuery, "empty number");
        i128 v = 0;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c < '0' || c > '9') throw Error(ErrorCode::InvalidQuery, "not a number: '" + std::string(s) + "'");
            v = v * 10 + (c - '0');
            if (v > i128(INT64_MAX)) throw Error(ErrorCode::Overflow, "number out of range");
        }
        return static_cast<std::int64_t>(negative ? -v : v);
    }

    void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

    std::int64_t num_{0};
    std::int64_t den_{1};
};

}  // namespace mwo
