// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qpack/counters.hpp"
#include "qpack/dqt.hpp"
#include "qpack/params.hpp"
#include "qpack/poly.hpp"
#include "qpack/redq.hpp"

namespace qpack {

// A polynomial split into degree-d chunks, each packed into one word:
// chunk i carries the coefficients of X^(i(d+1)) .. X^(i(d+1)+d).
struct FqtPoly {
    std::vector<Packed> chunks;
    u32 d = 0;
    QadicParams params;
};

FqtPoly fqt_encode(const DensePoly& poly, u32 d, const QadicParams& params);
DensePoly fqt_decode(const FqtPoly& enc, std::size_t coeff_len);

// Packed degree: a degree-N polynomial becomes D_q = ceil((N+1)/(d+1)) - 1
// in the chunk indeterminate.
u64 packed_degree(u64 n_degree, u32 d);

// Reduction plan for degree-d chunk products: covers 2d+1 digits and
// carries a windowed correction table when p does not divide q.
RedqPlan fqt_reduction_plan(const QadicParams& params, u32 d);

// Chunked q-adic product. params must have k = d+1; up to n_q chunk
// products are accumulated per word before each REDQ, and group results
// are combined digit-wise. Equals the schoolbook product.
//
// The loops run over the full zero-padded 2*D_q+1 range on both sides, so
// the instrumented counters match the closed-form model exactly:
// (2Dq+1)^2 multiply/accumulates and (2Dq+1)*ceil((2Dq+1)/n_q) reductions.
DensePoly fqt_mul(const DensePoly& P, const DensePoly& Q, u32 d, const QadicParams& params,
                  CostReport* cost = nullptr);

// Same, with a caller-supplied reduction plan (e.g. a cached table).
DensePoly fqt_mul(const DensePoly& P, const DensePoly& Q, u32 d, const QadicParams& params,
                  const RedqPlan& plan, CostReport* cost = nullptr);

// Baseline: centered representation, products accumulated unreduced in a
// wide accumulator, one plain reduction (counted as a division) per group
// of at most n_d terms, n_d from the overflow bound n_d*(p-1)^2 < 2^(m+1).
DensePoly delayed_mul(const DensePoly& P, const DensePoly& Q, u32 m, CostReport* cost = nullptr);

// Closed-form operation counts for a degree-N times degree-N product.
struct CostModelSide {
    u64 mul_add = 0;        // core multiply/accumulate operations
    u64 reductions = 0;     // REDQ (or REDC) calls
    u64 divisions = 0;      // one per reduction
    u64 mul_add_total = 0;  // core plus the 2k mul/adds inside each REDQ_k
};

struct CostModel {
    u64 dq = 0;
    CostModelSide delayed;
    CostModelSide fqt;
};

CostModel cost_model(u64 n_degree, u64 p, u32 d, u64 n_q, u64 n_d);

}  // namespace qpack
