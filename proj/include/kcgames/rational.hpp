#pragma once

#include <string>
#include <string_view>

#include "kcgames/bigint.hpp"

namespace kcg {

// Exact rational on BigInt. Denominator is always positive. Common powers
// of two are always cancelled; the remaining odd factor is reduced only
// while both magnitudes fit in 64 bits, so normalization stays cheap on
// the huge dyadic values the weight games produce. All comparisons
// cross-multiply, so reduction state never affects results.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(int v) : num_(static_cast<long long>(v)), den_(1) {}
    Rat(BigInt num, BigInt den); // throws std::invalid_argument on zero denominator
    static Rat from_ratio(long long num, long long den) { return Rat(BigInt(num), BigInt(den)); }
    // Accepts "p", "-p", "p/q".
    static Rat from_string(std::string_view text);
    // Dyadic 1/2^k.
    static Rat pow2_inv(unsigned k) { return Rat(BigInt(1), BigInt::pow2(k)); }

    std::string to_string() const; // "p" when den == 1, else "p/q"

    const BigInt &num() const { return num_; }
    const BigInt &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    int sign() const { return num_.sign(); }

    friend Rat operator+(const Rat &a, const Rat &b);
    friend Rat operator-(const Rat &a, const Rat &b);
    friend Rat operator*(const Rat &a, const Rat &b);
    friend Rat operator/(const Rat &a, const Rat &b); // throws on division by zero
    Rat operator-() const;
    Rat &operator+=(const Rat &o) { return *this = *this + o; }
    Rat &operator-=(const Rat &o) { return *this = *this - o; }
    Rat &operator*=(const Rat &o) { return *this = *this * o; }
    Rat &operator/=(const Rat &o) { return *this = *this / o; }

    static int cmp(const Rat &a, const Rat &b);
    friend bool operator==(const Rat &a, const Rat &b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Rat &a, const Rat &b) { return cmp(a, b) != 0; }
    friend bool operator<(const Rat &a, const Rat &b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rat &a, const Rat &b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rat &a, const Rat &b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rat &a, const Rat &b) { return cmp(a, b) >= 0; }

    // Largest e with 2^e <= |x|, within +-1 (exact enough for choosing a
    // dyadic margin below a value). Requires x != 0.
    long long floor_log2_bound() const;

    // Smallest-ish dyadic value strictly above x with relative margin
    // <= 2^-margin_bits. Requires x > 0.
    Rat dyadic_above(unsigned margin_bits = 4) const;

    double to_double() const; // reporting only, never used in game accounting

private:
    void normalize();
    BigInt num_;
    BigInt den_;
};

} // namespace kcg
