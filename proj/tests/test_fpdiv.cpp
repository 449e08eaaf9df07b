// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qpack/fpdiv.hpp"
#include "qpack/rng.hpp"

using namespace qpack;

TEST_CASE("round-to-nearest division floors exactly") {
    CHECK(floor_div_rn(10302, 3) == 3434);
    CHECK(floor_div_rn(4567, 23) == 198);
    CHECK(floor_div_rn(0, 7) == 0);
    CHECK_THROWS_AS(floor_div_rn(u64(1) << 53, 3), std::domain_error);
    CHECK_THROWS_AS(floor_div_rn(10, 0), std::domain_error);
}

TEST_CASE("round-to-nearest division sweeps") {
    SplitMix64 rng(11);
    for (int it = 0; it < 200000; ++it) {
        u64 p = 1 + rng.below((u64(1) << 53) - 1);
        u64 r = rng.below(u64(1) << 53);
        CHECK(floor_div_rn(r, p) == r / p);
    }
}

TEST_CASE("premultiplied floor bound by exact rational arithmetic") {
    CHECK(premul_floor_bound(0x1p-53) == (u64(1) << 52) - 1);
    CHECK(premul_floor_bound(0.5) == 0);
    CHECK(premul_floor_bound(0x1p-24) == (u64(1) << 23) - 1);
    CHECK(premul_floor_bound(0x1p-52) == (u64(1) << 51) - 1);
    CHECK_THROWS_AS(premul_floor_bound(0.0), std::domain_error);
    CHECK_THROWS_AS(premul_floor_bound(1.0), std::domain_error);
}

TEST_CASE("reciprocal invariants: upward rounding within two ulp") {
    SplitMix64 rng(12);
    for (int it = 0; it < 5000; ++it) {
        u64 p = 1 + rng.below(u64(1) << 40);
        ReciprocalDivisor d = ReciprocalDivisor::make(p);
        // exact comparison through the mantissa: inv_up = mant * 2^(e-53)
        int e2 = 0;
        double f = std::frexp(d.inv_up, &e2);
        u128 mant = static_cast<u128>(std::ldexp(f, 53));
        unsigned sh = static_cast<unsigned>(53 - e2);
        u128 lhs = mant * p;         // inv_up * p * 2^sh
        u128 one = static_cast<u128>(1) << sh;
        CHECK(lhs >= one);               // inv_up >= 1/p
        CHECK(lhs < one + (one >> 52));  // inv_up - 1/p < 2*epsilon/p
        CHECK(d.r_max == premul_floor_bound(3.0 * d.epsilon));
    }
}

TEST_CASE("premultiplied division: worst-case residues against the integer oracle") {
    SplitMix64 rng(13);
    ReciprocalDivisor cached = ReciprocalDivisor::make(3);
    for (int it = 0; it < 200000; ++it) {
        u64 p = 1 + rng.below(1 << 20);
        ReciprocalDivisor d = ReciprocalDivisor::make(p);
        u64 u = rng.below(d.r_max / p);
        u64 r = u * p + (p - 1);  // the residue the proof is tight for
        if (r > d.r_max) continue;
        CHECK(floor_div_premul(r, d) == u);
    }
    // boundary numerator
    CHECK(floor_div_premul(cached.r_max, cached) == cached.r_max / 3);
    CHECK(floor_div_premul(1, ReciprocalDivisor::make(1)) == 1);
    CHECK_THROWS_AS(floor_div_premul(cached.r_max + 1, cached), std::out_of_range);
}

TEST_CASE("premultiplied division: exhaustive small grid") {
    for (u64 p = 1; p <= 40; ++p) {
        ReciprocalDivisor d = ReciprocalDivisor::make(p);
        for (u64 r = 0; r <= 5000; ++r) CHECK(floor_div_premul(r, d) == r / p);
    }
}

TEST_CASE("premultiplied division: uniform random sweep") {
    SplitMix64 rng(14);
    for (int it = 0; it < 200000; ++it) {
        u64 p = 1 + rng.below(u64(1) << 26);
        ReciprocalDivisor d = ReciprocalDivisor::make(p);
        u64 r = rng.below(d.r_max + 1);
        CHECK(floor_div_premul(r, d) == r / p);
    }
}

TEST_CASE("premultiplied division: adversarial divisors near powers of two") {
    // divisors just below a power of two make 1/p land right above a
    // binade boundary, the worst placement for the upward roundings
    for (unsigned j = 2; j <= 25; ++j) {
        u64 p = (u64(1) << j) - 1;
        ReciprocalDivisor d = ReciprocalDivisor::make(p);
        for (u64 back = 0; back < 2000; ++back) {
            u64 r = d.r_max - back;
            CHECK(floor_div_premul(r, d) == r / p);
        }
    }
}

TEST_CASE("nested floors collapse: floor(floor(r/b)/a) == floor(r/(ab))") {
    SplitMix64 rng(15);
    for (int it = 0; it < 100000; ++it) {
        u128 r = rng.next_u128() >> (rng.below(64));
        u64 a = 1 + rng.below(u64(1) << 30);
        u64 b = 1 + rng.below(u64(1) << 30);
        u128 ab = static_cast<u128>(a) * b;
        CHECK((r / b) / a == r / ab);
        CHECK((r / a) / b == r / ab);
    }
}
