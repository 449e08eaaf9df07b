// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include "qpack/dqt.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qpack {

namespace {

constexpr u128 kMaxExactDouble = static_cast<u128>(1) << 53;

void check_same_params(const Packed& a, const Packed& b, const char* what) {
    if (!(a.params == b.params))
        throw std::invalid_argument(std::string(what) + ": operands packed under different params");
}

}  // namespace

Packed pack(const DensePoly& poly, const QadicParams& params) {
    if (poly.p != params.p) throw std::invalid_argument("pack: polynomial modulus differs from params.p");
    if (poly.degree() >= static_cast<long>(params.k))
        throw std::length_error("pack: polynomial degree " + std::to_string(poly.degree()) +
                                " overflows k = " + std::to_string(params.k) + " digits");
    std::size_t n = std::min<std::size_t>(poly.coeffs.size(), params.k);
    u128 v = 0;
    if (is_pow2(params.q)) {
        unsigned b = bit_width_u128(params.q) - 1;
        for (std::size_t i = n; i-- > 0;) v = (v << b) | poly.coeffs[i];
    } else {
        for (std::size_t i = n; i-- > 0;) v = v * params.q + poly.coeffs[i];
    }
    return Packed{v, params};
}

std::vector<u64> unpack_value(u128 value, u64 q, unsigned count) {
    std::vector<u64> digits(count, 0);
    if (is_pow2(q)) {
        unsigned b = bit_width_u128(q) - 1;
        u128 mask = q - 1;
        for (unsigned i = 0; i < count; ++i) {
            digits[i] = static_cast<u64>(value & mask);
            value >>= b;
        }
    } else {
        for (unsigned i = 0; i < count; ++i) {
            digits[i] = static_cast<u64>(value % q);
            value /= q;
        }
    }
    if (value != 0) throw std::invalid_argument("unpack: word has more than `count` digits");
    return digits;
}

std::vector<u64> unpack(const Packed& w, unsigned count) {
    return unpack_value(w.value, w.params.q, count);
}

Packed dqt_mul(const Packed& a, const Packed& b) {
    check_same_params(a, b, "dqt_mul");
    u128 prod = a.value * b.value;
#ifndef NDEBUG
    // digit-safety: under valid params with n_q >= 1 every convolution
    // coefficient stays below q
    if (a.value != 0 && b.value != 0) {
        for (u64 d : unpack_value(prod, a.params.q, 2 * a.params.k - 1)) assert(d < a.params.q);
    }
#endif
    return Packed{prod, a.params};
}

Packed dqt_mul_double(const Packed& a, const Packed& b) {
    check_same_params(a, b, "dqt_mul_double");
    double prod = packed_to_double(a) * packed_to_double(b);
    return packed_from_double(prod, a.params);
}

DensePoly dqt_mul_poly(const DensePoly& v1, const DensePoly& v2, const QadicParams& params) {
    ValidationResult vr = validate(params);
    if (!vr.ok()) throw std::invalid_argument("dqt_mul_poly: " + vr.detail);
    Packed prod = dqt_mul(pack(v1, params), pack(v2, params));
    std::vector<u64> digits = unpack(prod, 2 * params.k - 1);
    for (u64& d : digits) d %= params.p;
    return DensePoly{params.p, std::move(digits)};
}

double packed_to_double(const Packed& w) {
    if (w.value >= kMaxExactDouble)
        throw std::domain_error("packed_to_double: value does not fit 53 mantissa bits");
    return static_cast<double>(static_cast<u64>(w.value));
}

Packed packed_from_double(double value, const QadicParams& params) {
    if (!(value >= 0.0) || value >= 9007199254740992.0 /* 2^53 */)
        throw std::domain_error("packed_from_double: value outside exact double range");
    return Packed{static_cast<u128>(static_cast<u64>(value)), params};
}

}  // namespace qpack
