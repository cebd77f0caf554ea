#include "kcgames/bigint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace kcg {

namespace {
constexpr std::uint64_t kLimbBase = 1ull << 32;
constexpr std::uint32_t kDecChunk = 1000000000u; // 10^9
} // namespace

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    limbs_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
    if (mag >> 32) limbs_.push_back(static_cast<std::uint32_t>(mag >> 32));
}

BigInt::BigInt(unsigned long long v) {
    if (v == 0) return;
    sign_ = 1;
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

BigInt BigInt::from_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    bool neg = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        neg = text[0] == '-';
        i = 1;
    }
    if (i == text.size()) throw std::invalid_argument("integer literal has no digits");
    BigInt r;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in integer literal");
        // r = r * 10 + digit
        std::uint64_t carry = static_cast<std::uint64_t>(c - '0');
        for (auto &limb : r.limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * 10 + carry;
            limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        while (carry) {
            r.limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
            carry >>= 32;
        }
    }
    r.trim();
    if (!r.limbs_.empty()) r.sign_ = neg ? -1 : 1;
    return r;
}

BigInt BigInt::pow2(unsigned k) {
    BigInt r;
    r.sign_ = 1;
    r.limbs_.assign(k / 32 + 1, 0);
    r.limbs_.back() = 1u << (k % 32);
    return r;
}

std::string BigInt::to_decimal() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> chunks;
    BigInt work = abs();
    while (!work.is_zero()) {
        auto [q, r] = divmod_small(work, kDecChunk);
        chunks.push_back(r);
        work = std::move(q);
    }
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out += std::to_string(chunks.back());
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        out.append(9 - part.size(), '0');
        out += part;
    }
    return out;
}

bool BigInt::is_even() const {
    return limbs_.empty() || (limbs_[0] & 1u) == 0;
}

std::size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return (limbs_.size() - 1) * 32 + (32 - std::countl_zero(limbs_.back()));
}

std::size_t BigInt::trailing_zero_bits() const {
    if (limbs_.empty()) return 0;
    std::size_t i = 0;
    while (limbs_[i] == 0) ++i;
    return i * 32 + std::countr_zero(limbs_[i]);
}

std::uint64_t BigInt::magnitude_u64() const {
    std::uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

int BigInt::cmp_magnitude(const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_magnitude(const std::vector<std::uint32_t> &a,
                                                 const std::vector<std::uint32_t> &b) {
    const auto &longer = a.size() >= b.size() ? a : b;
    const auto &shorter = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> out;
    out.reserve(longer.size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < longer.size(); ++i) {
        std::uint64_t cur = carry + longer[i] + (i < shorter.size() ? shorter[i] : 0u);
        out.push_back(static_cast<std::uint32_t>(cur & 0xffffffffu));
        carry = cur >> 32;
    }
    if (carry) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_magnitude(const std::vector<std::uint32_t> &a,
                                                 const std::vector<std::uint32_t> &b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (cur < 0) {
            cur += static_cast<std::int64_t>(kLimbBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<std::uint32_t>(cur));
    }
    return out;
}

BigInt operator+(const BigInt &a, const BigInt &b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.sign_ = a.sign_;
        r.limbs_ = BigInt::add_magnitude(a.limbs_, b.limbs_);
    } else {
        int c = BigInt::cmp_magnitude(a.limbs_, b.limbs_);
        if (c == 0) return BigInt{};
        if (c > 0) {
            r.sign_ = a.sign_;
            r.limbs_ = BigInt::sub_magnitude(a.limbs_, b.limbs_);
        } else {
            r.sign_ = b.sign_;
            r.limbs_ = BigInt::sub_magnitude(b.limbs_, a.limbs_);
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt &a, const BigInt &b) {
    return a + (-b);
}

BigInt operator*(const BigInt &a, const BigInt &b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt{};
    BigInt r;
    r.sign_ = a.sign_ * b.sign_;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        const std::uint64_t av = a.limbs_[i];
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            std::uint64_t cur = static_cast<std::uint64_t>(r.limbs_[i + j]) + av * b.limbs_[j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + b.limbs_.size();
        while (carry) {
            std::uint64_t cur = static_cast<std::uint64_t>(r.limbs_[k]) + carry;
            r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::shifted_left(std::size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    BigInt r;
    r.sign_ = sign_;
    const std::size_t limb_shift = bits / 32;
    const unsigned bit_shift = static_cast<unsigned>(bits % 32);
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
        r.limbs_[i + limb_shift] |= static_cast<std::uint32_t>(v & 0xffffffffu);
        r.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
    }
    r.trim();
    return r;
}

BigInt BigInt::shifted_right(std::size_t bits) const {
    const std::size_t limb_shift = bits / 32;
    if (limb_shift >= limbs_.size()) return BigInt{};
    const unsigned bit_shift = static_cast<unsigned>(bits % 32);
    BigInt r;
    r.sign_ = sign_;
    r.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
        std::uint64_t v = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift && i + limb_shift + 1 < limbs_.size())
            v |= static_cast<std::uint64_t>(limbs_[i + limb_shift + 1]) << (32 - bit_shift);
        r.limbs_[i] = static_cast<std::uint32_t>(v);
    }
    r.trim();
    return r;
}

std::pair<BigInt, std::uint32_t> BigInt::divmod_small(const BigInt &a, std::uint32_t d) {
    if (d == 0) throw std::invalid_argument("division by zero");
    BigInt q;
    q.sign_ = a.sign_;
    q.limbs_.assign(a.limbs_.size(), 0);
    std::uint64_t rem = 0;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | a.limbs_[i];
        q.limbs_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    q.trim();
    return {std::move(q), static_cast<std::uint32_t>(rem)};
}

BigInt BigInt::divided_exact_u64(std::uint64_t d) const {
    if (d == 0) throw std::invalid_argument("division by zero");
    if (d >> 32) {
        // two-limb divisor: shift out common trailing zeros, then do
        // 32-bit steps on the odd part if it still exceeds 32 bits
        unsigned tz = std::countr_zero(d);
        BigInt shifted = this->shifted_right(tz);
        std::uint64_t odd = d >> tz;
        if (odd == 1) return shifted;
        if (odd >> 32) {
            // rare at desk scale; long division base 2^32 with 64-bit remainder
            BigInt q;
            q.sign_ = shifted.sign_;
            q.limbs_.assign(shifted.limbs_.size(), 0);
            unsigned __int128 rem = 0;
            for (std::size_t i = shifted.limbs_.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 32) | shifted.limbs_[i];
                q.limbs_[i] = static_cast<std::uint32_t>(cur / odd);
                rem = cur % odd;
            }
            q.trim();
            return q;
        }
        return shifted.divided_exact_u64(odd);
    }
    return divmod_small(*this, static_cast<std::uint32_t>(d)).first;
}

int BigInt::cmp(const BigInt &a, const BigInt &b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = cmp_magnitude(a.limbs_, b.limbs_);
    return a.sign_ >= 0 ? c : -c;
}

} // namespace kcg
