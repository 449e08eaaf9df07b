// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference implementations. Everything in this header is
// deliberately slow and straightforward: it is the ground truth the fast
// kernels are tested against, and shares no code with them.

#pragma once

#include <vector>

#include "qpack/common.hpp"
#include "qpack/poly.hpp"

namespace qpack::oracle {

// Nonnegative integer on four 64-bit limbs (little-endian). Arithmetic is
// exact; anything that would not fit 256 bits throws.
class BigUint256 {
  public:
    BigUint256() : limbs_{0, 0, 0, 0} {}
    explicit BigUint256(u64 v) : limbs_{v, 0, 0, 0} {}
    explicit BigUint256(u128 v)
        : limbs_{static_cast<u64>(v), static_cast<u64>(v >> 64), 0, 0} {}

    static BigUint256 from_decimal(const std::string& s);

    BigUint256 add(const BigUint256& o) const;
    BigUint256 mul_small(u64 m) const;
    BigUint256 mul(const BigUint256& o) const;

    // quotient into *this semantics avoided: returns quotient, sets rem
    BigUint256 divmod_small(u64 divisor, u64& rem) const;

    u64 mod_small(u64 divisor) const;

    int compare(const BigUint256& o) const;
    bool operator==(const BigUint256& o) const { return compare(o) == 0; }
    bool is_zero() const { return limbs_[0] == 0 && limbs_[1] == 0 && limbs_[2] == 0 && limbs_[3] == 0; }

    bool fits_u128() const { return limbs_[2] == 0 && limbs_[3] == 0; }
    u128 to_u128() const;

    std::string to_decimal() const;

  private:
    u64 limbs_[4];
};

// Convolution with per-term reduction mod p. Output length is
// len(a)+len(b)-1 (empty if either input is empty).
DensePoly schoolbook_mul(const DensePoly& a, const DensePoly& b);

// q-adic digits of r, each reduced mod p: digits[i] = (r / q^i mod q) mod p,
// for i = 0..d. Requires r < q^(d+1).
std::vector<u64> naive_mod_digits(const BigUint256& r, u64 p, u64 q, unsigned d);

// Unreduced q-adic digits of r (same contract, no mod-p step).
std::vector<u64> naive_digits(const BigUint256& r, u64 q, unsigned d);

// floor(r / q^i) mod p, evaluated directly in big-integer arithmetic.
u64 shifted_residue(const BigUint256& r, u64 q, unsigned i, u64 p);

// Remainder of a modulo the monic polynomial modulus, both over Z/pZ.
std::vector<u64> poly_mod(const std::vector<u64>& a, const std::vector<u64>& modulus, u64 p);

// Sum of v1[i]*v2[i] mod (p, modulus); elements are coefficient vectors
// over Z/pZ, the modulus is monic of degree k, results have length k.
std::vector<u64> naive_gfq_dot(const std::vector<std::vector<u64>>& v1,
                               const std::vector<std::vector<u64>>& v2,
                               const std::vector<u64>& modulus, u64 p);

}  // namespace qpack::oracle
