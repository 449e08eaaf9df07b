// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qpack/common.hpp"

namespace qpack {

// SplitMix64. Fixtures generated from a seed must be reproducible across
// implementations, so the generator and its reduction are pinned here:
// next() is the standard splitmix64 step, below(n) reduces by modulo.
class SplitMix64 {
  public:
    explicit SplitMix64(u64 seed) : state_(seed) {}

    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform-ish value in [0, n); n must be nonzero
    u64 below(u64 n) { return next() % n; }

    u128 next_u128() { return (static_cast<u128>(next()) << 64) | next(); }

  private:
    u64 state_;
};

}  // namespace qpack
