// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "qpack/common.hpp"

namespace qpack {

// Parameter bundle under which packed arithmetic is exact.
//
// p    prime modulus
// q    substitution radix, q > n_q * k * (p-1)^2
// k    coefficients packed per word
// n_q  products accumulated before a word is reduced/unpacked
// m    exact-integer capacity of the compute type in bits
//      (53 = double mantissa, 64 = machine word, 128 = double word)
//
// Exactness needs the accumulated digits to stay below q and the full
// word to stay below 2^m:  q > n_q*k*(p-1)^2  and  q^(2k-1) < 2^m.
struct QadicParams {
    u64 p = 0;
    u64 q = 0;
    u32 k = 0;
    u32 n_q = 0;
    u32 m = 0;

    bool operator==(const QadicParams&) const = default;
};

// Bound bundle for delayed (centered-representation) accumulation:
// n_d products may be summed unreduced while n_d * (p-1)^2 < 2^(m+1).
struct DelayedParams {
    u64 p = 0;
    u32 m = 0;
    u64 n_d = 0;
};

enum class ParamViolation {
    none,
    non_prime,
    q_too_small,      // q <= n_q * k * (p-1)^2
    word_overflow,    // q^(2k-1) >= 2^m
    q_unrepresentable // q itself does not fit the compute type
};

struct ValidationResult {
    ParamViolation violation = ParamViolation::none;
    std::string detail;

    bool ok() const { return violation == ParamViolation::none; }
};

bool is_prime(u64 n);

// Checks the exactness conditions; names the first violated one.
ValidationResult validate(u64 p, u64 q, u32 k, u32 n_q, u32 m);

ValidationResult validate(const QadicParams& params);

// Largest feasible packing for the given prime and word capacity:
// maximal k, then minimal q (minimal power of two when requested).
// m must be one of 24, 53, 64, 128. Throws std::domain_error when
// not even k = 1 fits.
QadicParams best_qadic(u64 p, u32 m, u32 n_q, bool prefer_power_of_two = true);

// Params for a fixed chunk degree d (k = d+1): minimal q as in best_qadic,
// n_q raised to the largest value q still clears. Throws when infeasible.
QadicParams qadic_for_degree(u64 p, u32 d, u32 m, bool prefer_power_of_two = true);

// Largest n_d with n_d * (p-1)^2 < 2^(m+1); 0 when even one product
// overflows.
u64 delayed_bound(u64 p, u32 m);

// Bundle of (p, m) with the derived accumulation bound.
DelayedParams delayed_params(u64 p, u32 m);

}  // namespace qpack
