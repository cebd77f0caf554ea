#include "kcgames/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kcg {

Rat::Rat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("zero denominator");
    normalize();
}

void Rat::normalize() {
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    const std::size_t twos = std::min(num_.trailing_zero_bits(), den_.trailing_zero_bits());
    if (twos) {
        num_ = num_.shifted_right(twos);
        den_ = den_.shifted_right(twos);
    }
    if (num_.fits_u64() && den_.fits_u64()) {
        const std::uint64_t g = std::gcd(num_.magnitude_u64(), den_.magnitude_u64());
        if (g > 1) {
            num_ = num_.divided_exact_u64(g);
            den_ = den_.divided_exact_u64(g);
        }
    }
}

Rat Rat::from_string(std::string_view text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(BigInt::from_decimal(text), BigInt(1));
    return Rat(BigInt::from_decimal(text.substr(0, slash)),
               BigInt::from_decimal(text.substr(slash + 1)));
}

std::string Rat::to_string() const {
    if (den_ == BigInt(1)) return num_.to_decimal();
    return num_.to_decimal() + "/" + den_.to_decimal();
}

Rat operator+(const Rat &a, const Rat &b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rat operator-(const Rat &a, const Rat &b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rat operator*(const Rat &a, const Rat &b) {
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
}

Rat operator/(const Rat &a, const Rat &b) {
    if (b.is_zero()) throw std::invalid_argument("rational division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
}

Rat Rat::operator-() const {
    Rat r = *this;
    r.num_ = -r.num_;
    return r;
}

int Rat::cmp(const Rat &a, const Rat &b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

long long Rat::floor_log2_bound() const {
    if (num_.is_zero()) throw std::invalid_argument("log of zero");
    return static_cast<long long>(num_.bit_length()) - static_cast<long long>(den_.bit_length());
}

Rat Rat::dyadic_above(unsigned margin_bits) const {
    if (sign() <= 0) throw std::invalid_argument("dyadic_above requires a positive value");
    // num/den > 2^(bl(num)-1-bl(den)), so this margin is < x * 2^-margin_bits
    const long long e = static_cast<long long>(num_.bit_length()) -
                        static_cast<long long>(den_.bit_length()) - 1 -
                        static_cast<long long>(margin_bits);
    Rat margin = e >= 0 ? Rat(BigInt::pow2(static_cast<unsigned>(e)), BigInt(1))
                        : Rat(BigInt(1), BigInt::pow2(static_cast<unsigned>(-e)));
    return *this + margin;
}

double Rat::to_double() const {
    if (num_.is_zero()) return 0.0;
    const auto squeeze = [](const BigInt &v, long long &shift) {
        const std::size_t bl = v.bit_length();
        shift = bl > 62 ? static_cast<long long>(bl - 62) : 0;
        return static_cast<double>(v.abs().shifted_right(static_cast<std::size_t>(shift)).magnitude_u64());
    };
    long long sn = 0, sd = 0;
    const double n = squeeze(num_, sn);
    const double d = squeeze(den_, sd);
    double r = std::ldexp(n / d, static_cast<int>(sn - sd));
    return num_.is_negative() ? -r : r;
}

} // namespace kcg
