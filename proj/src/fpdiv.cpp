// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include "qpack/fpdiv.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpack {

namespace {

constexpr double kUnitRoundoff = 0x1p-53;
constexpr u64 kMaxExact = u64(1) << 53;  // doubles are exact integers below this

// 256-bit product accumulator for the exact bound computation
struct Limbs4 {
    u64 l[4] = {0, 0, 0, 0};
};

// a (64-bit) times b (<= 192-bit in 3 limbs)
Limbs4 mul_64x192(u64 a, const u64 b[3]) {
    Limbs4 r;
    u128 carry = 0;
    for (int i = 0; i < 3; ++i) {
        u128 s = static_cast<u128>(a) * b[i] + r.l[i] + carry;
        r.l[i] = static_cast<u64>(s);
        carry = s >> 64;
    }
    r.l[3] = static_cast<u64>(carry);
    return r;
}

// true iff v < 2^bits
bool below_pow2(const Limbs4& v, unsigned bits) {
    for (int i = 3; i >= 0; --i) {
        unsigned lo = 64u * i;
        if (bits <= lo) {
            if (v.l[i] != 0) return false;
        } else if (bits < lo + 64) {
            if (v.l[i] >> (bits - lo)) return false;
            return true;  // higher limbs already checked
        } else {
            return true;
        }
    }
    return true;
}

}  // namespace

u64 premul_floor_bound(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::domain_error("premul_floor_bound: epsilon must be in (0, 1)");
    int e2 = 0;
    double f = std::frexp(epsilon, &e2);  // epsilon = f * 2^e2, f in [0.5, 1)
    u64 mant = static_cast<u64>(std::ldexp(f, 53));
    unsigned s = static_cast<unsigned>(53 - e2);  // epsilon = mant / 2^s

    // 1/(2e+e^2) = 2^(2s) / (mant*2^(s+1) + mant^2); values this small
    // saturate the u64 range
    if (s > 120) return std::numeric_limits<u64>::max();

    u64 denom[3] = {0, 0, 0};
    u128 sq = static_cast<u128>(mant) * mant;
    denom[0] = static_cast<u64>(sq);
    denom[1] = static_cast<u64>(sq >> 64);
    // add mant << (s+1)
    unsigned sh = s + 1;
    u128 shifted_lo = (sh < 128) ? (static_cast<u128>(mant) << (sh % 64)) : 0;
    unsigned limb = sh / 64;
    u64 add_lo = static_cast<u64>(shifted_lo);
    u64 add_hi = static_cast<u64>(shifted_lo >> 64);
    u128 acc = static_cast<u128>(denom[limb]) + add_lo;
    denom[limb] = static_cast<u64>(acc);
    u128 carry = (acc >> 64) + add_hi;
    for (unsigned i = limb + 1; i < 3 && carry; ++i) {
        acc = static_cast<u128>(denom[i]) + carry;
        denom[i] = static_cast<u64>(acc);
        carry = acc >> 64;
    }

    // largest r with r * denom < 2^(2s), by binary search over u64
    u64 hi = std::numeric_limits<u64>::max();
    if (below_pow2(mul_64x192(hi, denom), 2 * s)) return hi;  // saturated
    u64 lo = 0;
    --hi;
    while (lo < hi) {
        u64 mid = lo + (hi - lo + 1) / 2;
        if (below_pow2(mul_64x192(mid, denom), 2 * s))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

ReciprocalDivisor ReciprocalDivisor::make(u64 p) {
    if (p == 0) throw std::domain_error("ReciprocalDivisor: divisor must be positive");
    if (p >= kMaxExact) throw std::domain_error("ReciprocalDivisor: divisor exceeds exact double range");
    double z = 1.0 / static_cast<double>(p);
    // exact test z >= 1/p: with z = mant * 2^(e2-53), compare mant * p
    // against 2^(53-e2)
    int e2 = 0;
    double f = std::frexp(z, &e2);
    u64 mant = static_cast<u64>(std::ldexp(f, 53));
    u128 lhs = static_cast<u128>(mant) * p;
    unsigned sh = static_cast<unsigned>(53 - e2);
    bool at_least = (sh <= 127) ? (lhs >= (static_cast<u128>(1) << sh)) : false;
    double inv = at_least ? z : std::nextafter(z, std::numeric_limits<double>::infinity());

    ReciprocalDivisor d;
    d.p = p;
    d.inv_up = inv;
    d.epsilon = kUnitRoundoff;
    // each rounded-then-bumped step overshoots by < 3*eps relative (half an
    // ulp of nearest rounding plus a full ulp step), so the exactness bound
    // is evaluated at the tripled roundoff; doubling it is not enough, see
    // the boundary tests
    d.r_max = premul_floor_bound(3.0 * kUnitRoundoff);
    return d;
}

u64 floor_div_rn(u64 r, u64 p) {
    if (p == 0) throw std::domain_error("floor_div_rn: division by zero");
    if (r >= kMaxExact || p >= kMaxExact)
        throw std::domain_error("floor_div_rn: operands must be exact doubles (< 2^53)");
    return static_cast<u64>(std::floor(static_cast<double>(r) / static_cast<double>(p)));
}

u64 floor_div_premul(u64 r, const ReciprocalDivisor& d) {
    if (r > d.r_max)
        throw std::out_of_range("floor_div_premul: numerator " + std::to_string(r) +
                                " exceeds guaranteed range r_max = " + std::to_string(d.r_max));
    double t = static_cast<double>(r) * d.inv_up;
    double t_up = std::nextafter(t, std::numeric_limits<double>::infinity());
    return static_cast<u64>(t_up);
}

}  // namespace qpack
