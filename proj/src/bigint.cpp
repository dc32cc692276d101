#include "treelab/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treelab {

namespace {
constexpr std::uint64_t kBase = 1ULL << 32;
}

BigInt::BigInt(long long value) {
    if (value == 0) return;
    sign_ = value < 0 ? -1 : 1;
    std::uint64_t magnitude =
        value < 0 ? ~static_cast<std::uint64_t>(value) + 1 : static_cast<std::uint64_t>(value);
    while (magnitude != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(magnitude & 0xffffffffULL));
        magnitude >>= 32;
    }
}

BigInt BigInt::from_string(const std::string& decimal) {
    BigInt result;
    std::size_t i = 0;
    int sign = 1;
    if (i < decimal.size() && (decimal[i] == '+' || decimal[i] == '-')) {
        if (decimal[i] == '-') sign = -1;
        ++i;
    }
    if (i >= decimal.size()) throw std::invalid_argument("BigInt::from_string: empty");
    for (; i < decimal.size(); ++i) {
        if (decimal[i] < '0' || decimal[i] > '9')
            throw std::invalid_argument("BigInt::from_string: bad digit");
        result = result * BigInt(10) + BigInt(decimal[i] - '0');
    }
    if (!result.is_zero()) result.sign_ = sign;
    return result;
}

BigInt BigInt::pow(std::uint64_t base, unsigned exponent) {
    BigInt result(1);
    BigInt b(static_cast<long long>(base));
    while (exponent > 0) {
        if (exponent & 1U) result = result * b;
        b = b * b;
        exponent >>= 1U;
    }
    return result;
}

void BigInt::trim(std::vector<std::uint32_t>& limbs) {
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

int BigInt::compare_magnitude(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_magnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        std::uint64_t sum = carry;
        if (i < a.size()) sum += a[i];
        if (i < b.size()) sum += b[i];
        out.push_back(static_cast<std::uint32_t>(sum & 0xffffffffULL));
        carry = sum >> 32;
    }
    if (carry) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_magnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t diff = static_cast<std::int64_t>(a[i]) - borrow;
        if (i < b.size()) diff -= static_cast<std::int64_t>(b[i]);
        if (diff < 0) {
            diff += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<std::uint32_t>(diff));
    }
    trim(out);
    return out;
}

std::vector<std::uint32_t> BigInt::mul_magnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur =
                acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
            acc[i + j] = cur & 0xffffffffULL;
            carry = cur >> 32;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = acc[k] + carry;
            acc[k] = cur & 0xffffffffULL;
            carry = cur >> 32;
            ++k;
        }
    }
    std::vector<std::uint32_t> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i]);
    trim(out);
    return out;
}

std::vector<std::uint32_t> BigInt::divmod_magnitude(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b,
                                                    std::vector<std::uint32_t>& remainder) {
    if (b.empty()) throw std::domain_error("BigInt: division by zero");
    if (compare_magnitude(a, b) < 0) {
        remainder = a;
        return {};
    }
    if (b.size() == 1) {
        // Short division.
        std::vector<std::uint32_t> quotient(a.size());
        std::uint64_t rem = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | a[i];
            quotient[i] = static_cast<std::uint32_t>(cur / b[0]);
            rem = cur % b[0];
        }
        trim(quotient);
        remainder.clear();
        if (rem) remainder.push_back(static_cast<std::uint32_t>(rem));
        return quotient;
    }

    // Knuth algorithm D.  Normalize so the divisor's top limb has its high
    // bit set, guaranteeing the trial quotient is off by at most two.
    int shift = 0;
    std::uint32_t top = b.back();
    while ((top & 0x80000000U) == 0) {
        top <<= 1;
        ++shift;
    }
    const std::size_t n = b.size();
    const std::size_t m = a.size() - n;

    auto shifted_left = [&](const std::vector<std::uint32_t>& src, bool extra_limb) {
        std::vector<std::uint32_t> out(src.size() + (extra_limb ? 1 : 0), 0);
        for (std::size_t i = 0; i < src.size(); ++i) {
            out[i] |= shift ? (src[i] << shift) : src[i];
            if (shift && i + 1 < out.size()) out[i + 1] = src[i] >> (32 - shift);
        }
        return out;
    };
    std::vector<std::uint32_t> u = shifted_left(a, true);
    if (u.size() < a.size() + 1) u.resize(a.size() + 1, 0);
    std::vector<std::uint32_t> v = shifted_left(b, false);
    trim(v);

    std::vector<std::uint32_t> quotient(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
        const std::uint64_t numerator =
            (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        std::uint64_t qhat = numerator / v[n - 1];
        std::uint64_t rhat = numerator % v[n - 1];
        while (qhat >= kBase ||
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kBase) break;
        }
        // Multiply-subtract qhat * v from u[j .. j+n].
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t product = qhat * v[i] + carry;
            carry = product >> 32;
            std::int64_t diff = static_cast<std::int64_t>(u[i + j]) -
                                static_cast<std::int64_t>(product & 0xffffffffULL) - borrow;
            if (diff < 0) {
                diff += static_cast<std::int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<std::uint32_t>(diff);
        }
        std::int64_t diff = static_cast<std::int64_t>(u[j + n]) -
                            static_cast<std::int64_t>(carry) - borrow;
        if (diff < 0) {
            // Rare correction step: qhat was one too large.
            diff += static_cast<std::int64_t>(kBase);
            u[j + n] = static_cast<std::uint32_t>(diff);
            --qhat;
            std::uint64_t carry2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint64_t sum = static_cast<std::uint64_t>(u[i + j]) + v[i] + carry2;
                u[i + j] = static_cast<std::uint32_t>(sum & 0xffffffffULL);
                carry2 = sum >> 32;
            }
            u[j + n] = static_cast<std::uint32_t>(u[j + n] + carry2);
        } else {
            u[j + n] = static_cast<std::uint32_t>(diff);
        }
        quotient[j] = static_cast<std::uint32_t>(qhat);
    }
    trim(quotient);

    // Denormalize the remainder.
    std::vector<std::uint32_t> rem(u.begin(), u.begin() + static_cast<long>(n));
    if (shift) {
        for (std::size_t i = 0; i < rem.size(); ++i) {
            rem[i] >>= shift;
            if (i + 1 < n) rem[i] |= u[i + 1] << (32 - shift);
        }
    }
    trim(rem);
    remainder = std::move(rem);
    return quotient;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    if (!out.is_zero()) out.sign_ = -out.sign_;
    return out;
}

BigInt BigInt::operator+(const BigInt& other) const {
    if (is_zero()) return other;
    if (other.is_zero()) return *this;
    BigInt out;
    if (sign_ == other.sign_) {
        out.limbs_ = add_magnitude(limbs_, other.limbs_);
        out.sign_ = sign_;
    } else {
        const int cmp = compare_magnitude(limbs_, other.limbs_);
        if (cmp == 0) return BigInt();
        if (cmp > 0) {
            out.limbs_ = sub_magnitude(limbs_, other.limbs_);
            out.sign_ = sign_;
        } else {
            out.limbs_ = sub_magnitude(other.limbs_, limbs_);
            out.sign_ = other.sign_;
        }
    }
    return out;
}

BigInt BigInt::operator-(const BigInt& other) const { return *this + (-other); }

BigInt BigInt::operator*(const BigInt& other) const {
    BigInt out;
    out.limbs_ = mul_magnitude(limbs_, other.limbs_);
    if (!out.limbs_.empty()) out.sign_ = sign_ * other.sign_;
    return out;
}

BigInt BigInt::div_exact(const BigInt& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("BigInt::div_exact: zero divisor");
    if (is_zero()) return BigInt();
    std::vector<std::uint32_t> remainder;
    BigInt out;
    out.limbs_ = divmod_magnitude(limbs_, divisor.limbs_, remainder);
    if (!remainder.empty()) throw std::logic_error("BigInt::div_exact: division is not exact");
    if (!out.limbs_.empty()) out.sign_ = sign_ * divisor.sign_;
    return out;
}

int BigInt::compare(const BigInt& other) const {
    if (sign() != other.sign()) return sign() < other.sign() ? -1 : 1;
    const int magnitude = compare_magnitude(limbs_, other.limbs_);
    return sign() >= 0 ? magnitude : -magnitude;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    const std::vector<std::uint32_t> billion = {1000000000U};
    while (!work.empty()) {
        std::vector<std::uint32_t> remainder;
        work = divmod_magnitude(work, billion, remainder);
        std::uint32_t chunk = remainder.empty() ? 0 : remainder[0];
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + chunk % 10));
            chunk /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

double BigInt::to_double() const {
    double value = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) value = value * 4294967296.0 + limbs_[i];
    return sign() < 0 ? -value : value;
}

bool BigInt::fits_int64() const {
    if (limbs_.size() > 2) return false;
    if (limbs_.size() < 2) return true;
    const std::uint64_t magnitude = (static_cast<std::uint64_t>(limbs_[1]) << 32) | limbs_[0];
    if (sign_ > 0) return magnitude <= 0x7fffffffffffffffULL;
    return magnitude <= 0x8000000000000000ULL;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt::to_int64: out of range");
    if (is_zero()) return 0;
    std::uint64_t magnitude = limbs_[0];
    if (limbs_.size() == 2) magnitude |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return sign_ > 0 ? static_cast<long long>(magnitude)
                     : -static_cast<long long>(magnitude - 1) - 1;
}

}  // namespace treelab
