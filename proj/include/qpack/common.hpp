// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpack {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

std::string to_string(u128 v);
u128 parse_u128(const std::string& s);

// number of bits needed to represent v (0 -> 0)
constexpr unsigned bit_width_u128(u128 v) {
    unsigned n = 0;
    while (v) {
        v >>= 1;
        ++n;
    }
    return n;
}

constexpr bool is_pow2(u128 v) { return v != 0 && (v & (v - 1)) == 0; }

// v^e, throwing instead of wrapping
u128 checked_pow_u128(u128 v, unsigned e);

// true iff v^e < 2^128 (evaluated without overflow)
bool pow_fits_u128(u128 v, unsigned e);

// FNV-1a over the little-endian bytes of each value; used as the
// result checksum in bench records
u64 fold_checksum(const u64* data, std::size_t n);

}  // namespace qpack
