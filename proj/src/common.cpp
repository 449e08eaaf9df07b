// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include "qpack/common.hpp"

#include <algorithm>

namespace qpack {

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 parse_u128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_u128: empty string");
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("parse_u128: non-digit in \"" + s + "\"");
        unsigned d = static_cast<unsigned>(c - '0');
        if (v > (~static_cast<u128>(0) - d) / 10) throw std::overflow_error("parse_u128: value exceeds 128 bits");
        v = v * 10 + d;
    }
    return v;
}

u128 checked_pow_u128(u128 v, unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (v != 0 && r > ~static_cast<u128>(0) / v) throw std::overflow_error("checked_pow_u128: overflow");
        r *= v;
    }
    return r;
}

bool pow_fits_u128(u128 v, unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (v != 0 && r > ~static_cast<u128>(0) / v) return false;
        r *= v;
    }
    return true;
}

u64 fold_checksum(const u64* data, std::size_t n) {
    u64 h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        u64 v = data[i];
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace qpack
