// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qpack/params.hpp"
#include "qpack/poly.hpp"

namespace qpack {

// One q-adic word: the evaluation at q of a residue polynomial. Holds up
// to k digits each below q. The integer view is authoritative; a double
// view is available whenever the value stays below 2^53.
struct Packed {
    u128 value = 0;
    QadicParams params;

    bool operator==(const Packed& o) const { return value == o.value && params == o.params; }
};

// Evaluate poly at q (left shifts when q is a power of two).
// deg(poly) must be < k.
Packed pack(const DensePoly& poly, const QadicParams& params);

// First `count` q-adic digits of w, unreduced. w.value must be < q^count.
std::vector<u64> unpack(const Packed& w, unsigned count);

// Digit split of a raw word value.
std::vector<u64> unpack_value(u128 value, u64 q, unsigned count);

// Word product; the digits of the result are the convolution coefficients
// of the operands, unreduced. Operands must share params.
Packed dqt_mul(const Packed& a, const Packed& b);

// Same product computed entirely in doubles; bit-identical to dqt_mul
// whenever q^(2k-1) < 2^53. Available so the float view can be exercised
// directly.
Packed dqt_mul_double(const Packed& a, const Packed& b);

// Full pipeline: pack both inputs, multiply, split digits, reduce each
// digit mod p. Inputs of degree < k; result has 2k-1 coefficients.
DensePoly dqt_mul_poly(const DensePoly& v1, const DensePoly& v2, const QadicParams& params);

// Exact double view of a packed word (throws when value >= 2^53).
double packed_to_double(const Packed& w);
Packed packed_from_double(double value, const QadicParams& params);

}  // namespace qpack
