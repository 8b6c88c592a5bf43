#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qport {

using Scalar = double;
using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = Eigen::VectorXi;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr const char* kVersion = "0.1.0";

/// Binary selection vector over n candidates. Entry i is 1 when candidate i
/// is in the portfolio. Candidate i maps to qubit i, and qubit i is the
/// least-significant bit of a basis-state index; string renderings are
/// MSB-first (candidate n-1 printed first).
struct Portfolio {
    IntVector bits;

    Portfolio() = default;
    explicit Portfolio(IntVector b) : bits(std::move(b)) {
        for (Index i = 0; i < bits.size(); ++i) {
            if (bits[i] != 0 && bits[i] != 1) {
                throw std::invalid_argument("Portfolio bits must be 0 or 1");
            }
        }
    }

    Index size() const { return bits.size(); }
    int cardinality() const { return bits.sum(); }

    /// Basis-state index with qubit 0 as the least-significant bit.
    std::uint64_t basis_index() const {
        std::uint64_t idx = 0;
        for (Index i = 0; i < bits.size(); ++i) {
            if (bits[i]) idx |= std::uint64_t{1} << i;
        }
        return idx;
    }

    friend bool operator==(const Portfolio& a, const Portfolio& b) {
        return a.bits.size() == b.bits.size() && a.bits == b.bits;
    }
};

/// MSB-first bitstring, e.g. n=3 portfolio {x0=1,x1=0,x2=1} -> "101".
inline std::string to_bitstring(const Portfolio& p) {
    std::string s(static_cast<std::size_t>(p.size()), '0');
    for (Index i = 0; i < p.size(); ++i) {
        if (p.bits[i]) s[static_cast<std::size_t>(p.size() - 1 - i)] = '1';
    }
    return s;
}

inline Portfolio portfolio_from_bitstring(const std::string& s) {
    IntVector bits(static_cast<Index>(s.size()));
    for (std::size_t c = 0; c < s.size(); ++c) {
        if (s[c] != '0' && s[c] != '1') {
            throw std::invalid_argument("bitstring must contain only 0/1");
        }
        bits[static_cast<Index>(s.size() - 1 - c)] = s[c] == '1' ? 1 : 0;
    }
    return Portfolio(std::move(bits));
}

inline Portfolio portfolio_from_basis_index(std::uint64_t idx, Index n) {
    IntVector bits(n);
    for (Index i = 0; i < n; ++i) bits[i] = (idx >> i) & 1u ? 1 : 0;
    return Portfolio(std::move(bits));
}

inline std::string basis_index_to_bitstring(std::uint64_t idx, Index n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (Index i = 0; i < n; ++i) {
        if ((idx >> i) & 1u) s[static_cast<std::size_t>(n - 1 - i)] = '1';
    }
    return s;
}

inline int hamming_weight(std::uint64_t idx) {
    return static_cast<int>(__builtin_popcountll(idx));
}

}  // namespace qport
