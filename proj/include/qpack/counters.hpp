// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace qpack {

// Operation counters filled in by the instrumented kernels.
//
//   mul_add         word multiply/accumulate operations in the main loops
//   divisions       machine divisions by the modulus p (one per REDQ/REDC;
//                   a premultiplied-inverse realization still counts as one)
//   table_accesses  lookup-table reads (correction windows, field tables)
//   reduction_calls REDQ/REDC invocations
//
// Divisions by powers of q inside REDQ are shifts when q is a power of two
// and are never tallied here.
struct CostReport {
    std::uint64_t mul_add = 0;
    std::uint64_t divisions = 0;
    std::uint64_t table_accesses = 0;
    std::uint64_t reduction_calls = 0;

    CostReport& operator+=(const CostReport& o) {
        mul_add += o.mul_add;
        divisions += o.divisions;
        table_accesses += o.table_accesses;
        reduction_calls += o.reduction_calls;
        return *this;
    }
};

}  // namespace qpack
