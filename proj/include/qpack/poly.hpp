// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qpack/common.hpp"

namespace qpack {

// Dense residue polynomial: coeffs[i] is the coefficient of X^i, always in
// [0, p). Length is explicit; trailing zeros are allowed and meaningful.
struct DensePoly {
    u64 p = 0;
    std::vector<u64> coeffs;

    DensePoly() = default;
    DensePoly(u64 modulus, std::vector<u64> c) : p(modulus), coeffs(std::move(c)) {
        for (u64& v : coeffs) v %= p;
    }

    static DensePoly zero(u64 modulus, std::size_t len) { return DensePoly{modulus, std::vector<u64>(len, 0)}; }

    // Degree with trailing zeros ignored; -1 for the zero polynomial.
    long degree() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] != 0) return static_cast<long>(i);
        return -1;
    }

    bool is_zero() const { return degree() < 0; }

    bool operator==(const DensePoly& o) const {
        if (p != o.p) return false;
        std::size_t n = std::max(coeffs.size(), o.coeffs.size());
        for (std::size_t i = 0; i < n; ++i) {
            u64 a = i < coeffs.size() ? coeffs[i] : 0;
            u64 b = i < o.coeffs.size() ? o.coeffs[i] : 0;
            if (a != b) return false;
        }
        return true;
    }
};

}  // namespace qpack
