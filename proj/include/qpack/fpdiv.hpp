// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qpack/common.hpp"

namespace qpack {

// Exact floor division through floating-point multiplication by a
// precomputed reciprocal.
//
// The reciprocal is rounded toward +infinity, and the runtime multiply is
// rounded to nearest then adjusted one ulp up, so both steps only ever
// overshoot. Flooring the overshooting product still yields floor(r/p)
// for every numerator r up to r_max; r_max is derived from the tripled
// unit roundoff, which dominates the half-ulp rounding plus full-ulp
// adjustment of each step.
struct ReciprocalDivisor {
    u64 p = 0;
    double inv_up = 0.0;   // >= 1/p exactly, within two ulp of it
    double epsilon = 0.0;  // unit roundoff of the format (2^-53)
    u64 r_max = 0;         // largest guaranteed-exact numerator

    static ReciprocalDivisor make(u64 p);
};

// floor(r/p) via round-to-nearest division. Both operands (and their
// difference) must be exact doubles, i.e. below 2^53.
u64 floor_div_rn(u64 r, u64 p);

// floor(r/p) via the precomputed reciprocal; r must not exceed d.r_max.
u64 floor_div_premul(u64 r, const ReciprocalDivisor& d);

// Largest integer r with r < 1/(2e + e^2), evaluated in exact rational
// arithmetic; saturates at 2^64-1 for tiny e.
u64 premul_floor_bound(double epsilon);

}  // namespace qpack
