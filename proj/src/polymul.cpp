// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include "qpack/polymul.hpp"

#include <cassert>
#include <stdexcept>

#include "qpack/redq.hpp"

namespace qpack {

namespace {

using i128 = __int128;

// largest correction window whose table stays small
u32 choose_window(u64 p, u64 table_budget = u64(1) << 20) {
    for (u32 w = 4; w >= 2; --w) {
        if (pow_fits_u128(p, w) && checked_pow_u128(p, w) <= table_budget) return w;
    }
    return 0;  // direct correction
}

}  // namespace

u64 packed_degree(u64 n_degree, u32 d) {
    return (n_degree + 1 + d) / (d + 1) - 1;  // ceil((N+1)/(d+1)) - 1
}

FqtPoly fqt_encode(const DensePoly& poly, u32 d, const QadicParams& params) {
    if (params.k != d + 1)
        throw std::invalid_argument("fqt_encode: params.k must equal d+1");
    FqtPoly enc;
    enc.d = d;
    enc.params = params;
    std::size_t len = poly.coeffs.empty() ? 1 : poly.coeffs.size();
    std::size_t chunks = (len + d) / (d + 1);
    enc.chunks.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        DensePoly piece{poly.p, {}};
        piece.coeffs.assign(d + 1, 0);
        for (u32 j = 0; j <= d; ++j) {
            std::size_t i = c * (d + 1) + j;
            if (i < poly.coeffs.size()) piece.coeffs[j] = poly.coeffs[i];
        }
        enc.chunks.push_back(pack(piece, params));
    }
    return enc;
}

DensePoly fqt_decode(const FqtPoly& enc, std::size_t coeff_len) {
    DensePoly out = DensePoly::zero(enc.params.p, coeff_len);
    for (std::size_t c = 0; c < enc.chunks.size(); ++c) {
        std::vector<u64> digits = unpack(enc.chunks[c], enc.d + 1);
        for (u32 j = 0; j <= enc.d; ++j) {
            std::size_t i = c * (enc.d + 1) + j;
            if (i < coeff_len)
                out.coeffs[i] = digits[j] % enc.params.p;
            else if (digits[j] % enc.params.p != 0)
                throw std::length_error("fqt_decode: nonzero coefficient beyond requested length");
        }
    }
    return out;
}

RedqPlan fqt_reduction_plan(const QadicParams& params, u32 d) {
    RedqPlan plan = RedqPlan::build(params.p, params.q, 2 * d, RedqMode::integer);
    if (plan.neg_q_mod_p != 0) {
        if (u32 w = choose_window(params.p); w != 0)
            plan.attach_correction(build_correction_table(params.p, params.q, w, TableIndexing::base_p));
    }
    return plan;
}

DensePoly fqt_mul(const DensePoly& P, const DensePoly& Q, u32 d, const QadicParams& params,
                  CostReport* cost) {
    return fqt_mul(P, Q, d, params, fqt_reduction_plan(params, d), cost);
}

DensePoly fqt_mul(const DensePoly& P, const DensePoly& Q, u32 d, const QadicParams& params,
                  const RedqPlan& plan, CostReport* cost) {
    if (P.p != Q.p) throw std::invalid_argument("fqt_mul: mismatched moduli");
    if (params.k != d + 1) throw std::invalid_argument("fqt_mul: params.k must equal d+1");
    if (plan.p != params.p || plan.q != params.q || plan.d != 2 * d)
        throw std::invalid_argument("fqt_mul: reduction plan does not match the params");
    ValidationResult vr = validate(params);
    if (!vr.ok()) throw std::invalid_argument("fqt_mul: " + vr.detail);
    if (P.coeffs.empty() || Q.coeffs.empty()) return DensePoly{P.p, {}};

    u64 n_degree = std::max(P.coeffs.size(), Q.coeffs.size()) - 1;
    u64 dq = packed_degree(n_degree, d);
    std::size_t span = 2 * dq + 1;  // padded chunk range on both operands

    FqtPoly pe = fqt_encode(P, d, params);
    FqtPoly qe = fqt_encode(Q, d, params);
    Packed zero{0, params};
    std::vector<Packed> pw(span, zero), qw(span, zero);
    for (std::size_t i = 0; i < pe.chunks.size(); ++i) pw[i] = pe.chunks[i];
    for (std::size_t i = 0; i < qe.chunks.size(); ++i) qw[i] = qe.chunks[i];

    DensePoly out = DensePoly::zero(P.p, P.coeffs.size() + Q.coeffs.size() - 1);
    u64 groups = (span + params.n_q - 1) / params.n_q;
    std::vector<u64> mu;

    for (std::size_t t = 0; t < span; ++t) {
        for (u64 g = 0; g < groups; ++g) {
            std::size_t lo = g * params.n_q;
            std::size_t hi = std::min<std::size_t>(lo + params.n_q, span);
            u128 acc = 0;
            for (std::size_t i = lo; i < hi; ++i) {
                u128 a = pw[i].value;
                u128 b = (t >= i && t - i < span) ? qw[t - i].value : 0;
                acc += a * b;
                if (cost) cost->mul_add += 1;
            }
#ifdef QPACK_PARANOID_CHECKS
            // recompute the accumulated digits from the raw coefficients:
            // every one must stay below q or the packing has overflowed
            {
                std::vector<u128> digits(2 * d + 1, 0);
                for (std::size_t i = lo; i < hi; ++i) {
                    if (t < i || t - i >= span) continue;
                    std::vector<u64> da = unpack(pw[i], d + 1);
                    std::vector<u64> db = unpack(qw[t - i], d + 1);
                    for (u32 x = 0; x <= d; ++x)
                        for (u32 y = 0; y <= d; ++y) digits[x + y] += static_cast<u128>(da[x]) * db[y];
                }
                for (u128 v : digits)
                    if (v >= params.q)
                        throw std::logic_error("fqt_mul: accumulated digit overflowed q");
            }
#endif
            redq_residues_into(acc, plan, mu, cost);
            std::size_t base = t * (d + 1);
            for (u32 j = 0; j < mu.size(); ++j) {
                std::size_t idx = base + j;
                if (idx < out.coeffs.size()) {
                    out.coeffs[idx] = (out.coeffs[idx] + mu[j]) % params.p;
                } else {
                    assert(mu[j] == 0);
                }
            }
        }
    }
    return out;
}

DensePoly delayed_mul(const DensePoly& P, const DensePoly& Q, u32 m, CostReport* cost) {
    if (P.p != Q.p) throw std::invalid_argument("delayed_mul: mismatched moduli");
    u64 p = P.p;
    u64 n_d = delayed_bound(p, m);
    if (n_d == 0)
        throw std::domain_error("delayed_mul: even a single product overflows m = " + std::to_string(m));
    if (P.coeffs.empty() || Q.coeffs.empty()) return DensePoly{p, {}};

    // centered representation: residues mapped into [-(p-1)/2, p/2]
    i64 half = static_cast<i64>(p / 2);
    auto centered = [&](const DensePoly& poly, std::size_t span) {
        std::vector<i64> c(span, 0);
        for (std::size_t i = 0; i < poly.coeffs.size(); ++i) {
            i64 v = static_cast<i64>(poly.coeffs[i]);
            c[i] = v > half ? v - static_cast<i64>(p) : v;
        }
        return c;
    };

    u64 n_degree = std::max(P.coeffs.size(), Q.coeffs.size()) - 1;
    std::size_t span = 2 * n_degree + 1;
    std::vector<i64> ca = centered(P, span), cb = centered(Q, span);

    DensePoly out = DensePoly::zero(p, P.coeffs.size() + Q.coeffs.size() - 1);
    u64 groups = static_cast<u64>((static_cast<u128>(span) + n_d - 1) / n_d);

    for (std::size_t j = 0; j < span; ++j) {
        u64 acc_res = 0;
        for (u64 g = 0; g < groups; ++g) {
            std::size_t lo = g * n_d;
            std::size_t hi = std::min<std::size_t>(lo + n_d, span);
            assert(hi - lo <= n_d);
            i128 sum = 0;
            for (std::size_t i = lo; i < hi; ++i) {
                i128 a = ca[i];
                i128 b = (j >= i && j - i < span) ? cb[j - i] : 0;
                sum += a * b;
                if (cost) cost->mul_add += 1;
            }
            // REDC stand-in: one plain remainder, one division's worth
            i128 r = sum % static_cast<i128>(p);
            if (r < 0) r += static_cast<i128>(p);
            if (cost) {
                cost->divisions += 1;
                cost->reduction_calls += 1;
            }
            acc_res = (acc_res + static_cast<u64>(r)) % p;
        }
        if (j < out.coeffs.size()) {
            out.coeffs[j] = acc_res;
        } else {
            assert(acc_res == 0);
        }
    }
    return out;
}

CostModel cost_model(u64 n_degree, u64 p, u32 d, u64 n_q, u64 n_d) {
    if (n_q == 0 || n_d == 0) throw std::invalid_argument("cost_model: n_q and n_d must be >= 1");
    (void)p;
    CostModel m;
    m.dq = packed_degree(n_degree, d);

    u64 wide_n = 2 * n_degree + 1;
    m.delayed.mul_add = wide_n * wide_n;
    m.delayed.reductions =
        wide_n * static_cast<u64>((static_cast<u128>(wide_n) + n_d - 1) / n_d);
    m.delayed.divisions = m.delayed.reductions;
    m.delayed.mul_add_total = m.delayed.mul_add;  // REDC is the bare division

    u64 wide_dq = 2 * m.dq + 1;
    m.fqt.mul_add = wide_dq * wide_dq;
    m.fqt.reductions = wide_dq * ((wide_dq + n_q - 1) / n_q);
    m.fqt.divisions = m.fqt.reductions;
    // each REDQ over k = 2d+1 residues costs 1 division plus 2k mul/adds
    m.fqt.mul_add_total = m.fqt.mul_add + m.fqt.reductions * 2 * (2 * static_cast<u64>(d) + 1);
    return m;
}

}  // namespace qpack
