#include "qport/bigint.hpp"

#include <cassert>
#include <stdexcept>

namespace qport {

BigUint::BigUint(std::uint64_t v) {
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    trim();
}

void BigUint::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::mul_small(std::uint64_t m) {
    if (m >> 32) throw std::invalid_argument("mul_small supports 32-bit multipliers");
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        const std::uint64_t prod = static_cast<std::uint64_t>(limb) * m + carry;
        limb = static_cast<std::uint32_t>(prod & 0xffffffffu);
        carry = prod >> 32;
    }
    while (carry) {
        limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
        carry >>= 32;
    }
    trim();
    return *this;
}

BigUint& BigUint::div_small(std::uint64_t d) {
    assert(d != 0 && d <= 0xffffffffu);
    std::uint64_t rem = 0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
        const std::uint64_t cur = (rem << 32) | *it;
        *it = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    assert(rem == 0 && "div_small requires exact divisibility");
    trim();
    return *this;
}

int BigUint::decimal_digits() const {
    return static_cast<int>(to_string().size());
}

std::string BigUint::to_string() const {
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    auto all_zero = [&] {
        for (auto w : work)
            if (w) return false;
        return true;
    };
    if (all_zero()) return "0";
    while (!all_zero()) {
        std::uint64_t rem = 0;
        for (auto it = work.rbegin(); it != work.rend(); ++it) {
            const std::uint64_t cur = (rem << 32) | *it;
            *it = static_cast<std::uint32_t>(cur / 10);
            rem = cur % 10;
        }
        digits.push_back(static_cast<char>('0' + rem));
    }
    return {digits.rbegin(), digits.rend()};
}

double BigUint::to_double() const {
    double v = 0.0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
        v = v * 4294967296.0 + static_cast<double>(*it);
    }
    return v;
}

BigUint binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("binomial: need 0 <= k <= n");
    if (k > n - k) k = n - k;
    BigUint result(1);
    // result stays integral at every step: C(n-k+i, i) is an integer
    for (int i = 1; i <= k; ++i) {
        result.mul_small(static_cast<std::uint64_t>(n - k + i));
        result.div_small(static_cast<std::uint64_t>(i));
    }
    return result;
}

}  // namespace qport
