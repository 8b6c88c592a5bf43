#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qport {

/// Arbitrary-precision unsigned integer, just large enough for exact
/// binomial coefficients (the n=88, k=28 search space overflows 64 bits by
/// three decimal orders of magnitude).
class BigUint {
  public:
    BigUint() : limbs_{0} {}
    explicit BigUint(std::uint64_t v);

    BigUint& mul_small(std::uint64_t m);
    /// Exact division; caller guarantees divisibility (asserted).
    BigUint& div_small(std::uint64_t d);

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
    /// Number of decimal digits.
    int decimal_digits() const;
    std::string to_string() const;
    /// Value as double (may round); for order-of-magnitude checks.
    double to_double() const;

    friend bool operator==(const BigUint& a, const BigUint& b) {
        return a.limbs_ == b.limbs_;
    }

  private:
    // base 2^32 little-endian limbs, no leading zero limb
    std::vector<std::uint32_t> limbs_;
    void trim();
};

/// Exact binomial coefficient C(n, k); throws when k > n.
BigUint binomial(int n, int k);

}  // namespace qport
