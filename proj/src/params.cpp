// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include "qpack/params.hpp"

#include <limits>
#include <stdexcept>

namespace qpack {

namespace {

// n_q * k * (p-1)^2, the value q must strictly exceed
u128 digit_load(u64 p, u32 k, u32 n_q) {
    u128 span = static_cast<u128>(p - 1) * (p - 1);
    return span * k * n_q;
}

// q^(2k-1) < 2^m, checked without overflow
bool word_bound_ok(u64 q, u32 k, u32 m) {
    unsigned e = 2 * k - 1;
    if (!pow_fits_u128(q, e)) return false;
    if (m >= 128) return true;
    return checked_pow_u128(q, e) < (static_cast<u128>(1) << m);
}

void check_m(u32 m) {
    if (m != 24 && m != 53 && m != 64 && m != 128)
        throw std::invalid_argument("m must be one of 24, 53, 64, 128 (got " + std::to_string(m) + ")");
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

ValidationResult validate(u64 p, u64 q, u32 k, u32 n_q, u32 m) {
    if (p == 0 || q == 0 || k == 0 || n_q == 0 || m == 0)
        throw std::invalid_argument("validate: all parameters must be positive");
    if (!is_prime(p))
        return {ParamViolation::non_prime, "p = " + std::to_string(p) + " is not prime"};
    if (bit_width_u128(q) > m)
        return {ParamViolation::q_unrepresentable,
                "q = " + std::to_string(q) + " needs more than m = " + std::to_string(m) + " bits"};
    u128 load = digit_load(p, k, n_q);
    if (static_cast<u128>(q) <= load)
        return {ParamViolation::q_too_small,
                "q = " + std::to_string(q) + " <= n_q*k*(p-1)^2 = " + to_string(load)};
    if (!word_bound_ok(q, k, m))
        return {ParamViolation::word_overflow,
                "q^(2k-1) with q = " + std::to_string(q) + ", k = " + std::to_string(k) +
                    " does not fit below 2^" + std::to_string(m)};
    return {};
}

ValidationResult validate(const QadicParams& params) {
    return validate(params.p, params.q, params.k, params.n_q, params.m);
}

namespace {

// Minimal q for the given k: the smallest integer (or power of two)
// strictly above the digit load. 0 when no representable q works.
u64 minimal_q(u64 p, u32 k, u32 n_q, u32 m, bool pow2) {
    u128 load = digit_load(p, k, n_q);
    u128 q;
    if (pow2) {
        unsigned b = bit_width_u128(load);
        if (b >= 128) return 0;
        q = static_cast<u128>(1) << b;
    } else {
        q = load + 1;
    }
    if (q > std::numeric_limits<u64>::max()) return 0;
    if (bit_width_u128(q) > m) return 0;
    return static_cast<u64>(q);
}

}  // namespace

QadicParams best_qadic(u64 p, u32 m, u32 n_q, bool prefer_power_of_two) {
    check_m(m);
    if (!is_prime(p)) throw std::domain_error("best_qadic: p = " + std::to_string(p) + " is not prime");
    if (n_q == 0) throw std::invalid_argument("best_qadic: n_q must be >= 1");

    QadicParams best;
    for (u32 k = 1;; ++k) {
        u64 q = minimal_q(p, k, n_q, m, prefer_power_of_two);
        if (q == 0 || !word_bound_ok(q, k, m)) break;  // infeasibility is monotone in k
        best = QadicParams{p, q, k, n_q, m};
    }
    if (best.k == 0)
        throw std::domain_error("best_qadic: no packing with k >= 1 fits p = " + std::to_string(p) +
                                " into m = " + std::to_string(m) + " bits");
    return best;
}

QadicParams qadic_for_degree(u64 p, u32 d, u32 m, bool prefer_power_of_two) {
    check_m(m);
    u32 k = d + 1;
    u64 q = minimal_q(p, k, 1, m, prefer_power_of_two);
    if (q == 0 || !word_bound_ok(q, k, m))
        throw std::domain_error("qadic_for_degree: degree " + std::to_string(d) + " does not fit p = " +
                                std::to_string(p) + " into m = " + std::to_string(m) + " bits");
    u128 unit = digit_load(p, k, 1);
    u64 n_q = static_cast<u64>((q - 1) / unit);
    QadicParams params{p, q, k, static_cast<u32>(n_q), m};
    ValidationResult vr = validate(params);
    if (!vr.ok()) throw std::domain_error("qadic_for_degree: " + vr.detail);
    return params;
}

u64 delayed_bound(u64 p, u32 m) {
    if (p < 2) throw std::invalid_argument("delayed_bound: p must be >= 2");
    u128 span = static_cast<u128>(p - 1) * (p - 1);
    u128 n;
    if (m + 1 <= 127) {
        u128 top = (static_cast<u128>(1) << (m + 1)) - 1;  // 2^(m+1) - 1
        n = top / span;
    } else {
        // (2^(m+1) - 1) / span without forming 2^(m+1)
        u128 top = ~static_cast<u128>(0);  // 2^128 - 1
        u128 t = top / span;
        if (t >> 64) return std::numeric_limits<u64>::max();
        u128 r = top % span;
        n = 2 * t + (2 * r + 1) / span;
    }
    if (n > std::numeric_limits<u64>::max()) return std::numeric_limits<u64>::max();
    return static_cast<u64>(n);
}

DelayedParams delayed_params(u64 p, u32 m) { return DelayedParams{p, m, delayed_bound(p, m)}; }

}  // namespace qpack
