#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace kcg {

// Arbitrary-precision signed integer. Sign + magnitude, little-endian
// 32-bit limbs, no trailing zero limbs. Covers exactly what the exact
// weight accounting needs: ring arithmetic, shifts, comparisons, small
// divisors for decimal conversion. No general big/big division.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    BigInt(unsigned long long v);
    template <typename T, std::enable_if_t<std::is_integral_v<T> && std::is_signed_v<T>, int> = 0>
    BigInt(T v) : BigInt(static_cast<long long>(v)) {}
    template <typename T, std::enable_if_t<std::is_integral_v<T> && std::is_unsigned_v<T>, int> = 0>
    BigInt(T v) : BigInt(static_cast<unsigned long long>(v)) {}

    static BigInt from_decimal(std::string_view text); // throws std::invalid_argument
    static BigInt pow2(unsigned k);

    std::string to_decimal() const;

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_even() const;
    int sign() const { return sign_; }

    // Number of bits in the magnitude; 0 for zero.
    std::size_t bit_length() const;
    // Trailing zero bits of the magnitude; 0 for zero.
    std::size_t trailing_zero_bits() const;

    // True if the magnitude fits in 64 bits; value() then returns it.
    bool fits_u64() const { return limbs_.size() <= 2; }
    std::uint64_t magnitude_u64() const;

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt &a, const BigInt &b);
    friend BigInt operator-(const BigInt &a, const BigInt &b);
    friend BigInt operator*(const BigInt &a, const BigInt &b);
    BigInt &operator+=(const BigInt &o) { return *this = *this + o; }
    BigInt &operator-=(const BigInt &o) { return *this = *this - o; }
    BigInt &operator*=(const BigInt &o) { return *this = *this * o; }

    BigInt shifted_left(std::size_t bits) const;
    BigInt shifted_right(std::size_t bits) const; // arithmetic on magnitude, sign kept (use on exact divisions)

    // Divide magnitude by a small divisor; returns {quotient, remainder}.
    // Quotient keeps this value's sign, remainder is nonnegative magnitude.
    static std::pair<BigInt, std::uint32_t> divmod_small(const BigInt &a, std::uint32_t d);

    // Exact division by a value that fits in u64 (caller guarantees divisibility).
    BigInt divided_exact_u64(std::uint64_t d) const;

    static int cmp(const BigInt &a, const BigInt &b);

    friend bool operator==(const BigInt &a, const BigInt &b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt &a, const BigInt &b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt &a, const BigInt &b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt &a, const BigInt &b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt &a, const BigInt &b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt &a, const BigInt &b) { return cmp(a, b) >= 0; }

private:
    static int cmp_magnitude(const std::vector<std::uint32_t> &a,
                             const std::vector<std::uint32_t> &b);
    static std::vector<std::uint32_t> add_magnitude(const std::vector<std::uint32_t> &a,
                                                    const std::vector<std::uint32_t> &b);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_magnitude(const std::vector<std::uint32_t> &a,
                                                    const std::vector<std::uint32_t> &b);
    void trim();

    int sign_ = 0;
    std::vector<std::uint32_t> limbs_;
};

} // namespace kcg
