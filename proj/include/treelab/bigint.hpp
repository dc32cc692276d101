#ifndef TREELAB_BIGINT_HPP
#define TREELAB_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace treelab {

// Signed arbitrary-precision integer, base 2^32 limbs.  Supports exactly the
// operations fraction-free elimination needs: add, subtract, multiply and
// exact division, plus decimal printing.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long value);  // NOLINT(google-explicit-constructor)

    static BigInt from_string(const std::string& decimal);
    static BigInt pow(std::uint64_t base, unsigned exponent);

    bool is_zero() const { return limbs_.empty(); }
    int sign() const { return limbs_.empty() ? 0 : sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& other) const;
    BigInt operator-(const BigInt& other) const;
    BigInt operator*(const BigInt& other) const;

    // Quotient of an exact division; throws if a nonzero remainder shows up.
    BigInt div_exact(const BigInt& divisor) const;

    bool operator==(const BigInt& other) const {
        return sign() == other.sign() && limbs_ == other.limbs_;
    }
    bool operator!=(const BigInt& other) const { return !(*this == other); }

    // Three-way comparison of signed values: -1, 0, +1.
    int compare(const BigInt& other) const;

    std::string to_string() const;

    // Value as double (approximate for large magnitudes).
    double to_double() const;

    bool fits_int64() const;
    long long to_int64() const;  // throws unless fits_int64()

  private:
    static int compare_magnitude(const std::vector<std::uint32_t>& a,
                                 const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_magnitude(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_magnitude(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_magnitude(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b);
    // Knuth algorithm D; returns quotient magnitude, stores remainder.
    static std::vector<std::uint32_t> divmod_magnitude(const std::vector<std::uint32_t>& a,
                                                       const std::vector<std::uint32_t>& b,
                                                       std::vector<std::uint32_t>& remainder);
    static void trim(std::vector<std::uint32_t>& limbs);

    int sign_ = 1;  // meaningful only when limbs_ is non-empty
    std::vector<std::uint32_t> limbs_;
};

}  // namespace treelab

#endif
