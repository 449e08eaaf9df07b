// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include "qpack/gfq.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qpack/fpdiv.hpp"

namespace qpack {

namespace {

std::vector<u64> index_to_coeffs(u64 idx, u32 k, u64 p) {
    std::vector<u64> c(k, 0);
    for (u32 i = 0; i < k; ++i) {
        c[i] = idx % p;
        idx /= p;
    }
    return c;
}

u64 coeffs_to_index(std::span<const u64> c, u64 p) {
    u64 idx = 0;
    for (std::size_t i = c.size(); i-- > 0;) idx = idx * p + (c[i] % p);
    return idx;
}

// schoolbook product reduced by the monic modulus
std::vector<u64> poly_mulmod(std::span<const u64> a, std::span<const u64> b,
                             const std::vector<u64>& modulus, u64 p) {
    if (a.empty() || b.empty()) return std::vector<u64>(modulus.size() - 1, 0);
    std::vector<u64> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    std::size_t k = modulus.size() - 1;
    while (prod.size() > k) {
        u64 lead = prod.back();
        std::size_t shift = prod.size() - 1 - k;
        if (lead != 0) {
            for (std::size_t i = 0; i < k; ++i) {
                u64 sub = (lead * modulus[i]) % p;
                prod[shift + i] = (prod[shift + i] + p - sub) % p;
            }
        }
        prod.pop_back();
    }
    prod.resize(k, 0);
    return prod;
}

// remainder of a by the monic divisor; both coefficient vectors over Z/pZ
std::vector<u64> poly_rem(std::vector<u64> a, std::span<const u64> divisor, u64 p) {
    std::size_t dd = divisor.size() - 1;
    while (a.size() > dd) {
        u64 lead = a.back();
        std::size_t shift = a.size() - 1 - dd;
        if (lead != 0) {
            for (std::size_t i = 0; i < dd; ++i) {
                u64 sub = (lead * divisor[i]) % p;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
        a.pop_back();
    }
    return a;
}

bool is_zero_poly(std::span<const u64> a) {
    return std::all_of(a.begin(), a.end(), [](u64 v) { return v == 0; });
}

// trial division by every monic polynomial of degree 1..k/2
bool is_irreducible(const std::vector<u64>& poly, u64 p) {
    u32 k = static_cast<u32>(poly.size() - 1);
    if (k == 1) return true;
    for (u32 t = 1; 2 * t <= k; ++t) {
        u64 count = 1;
        for (u32 i = 0; i < t; ++i) count *= p;
        for (u64 idx = 0; idx < count; ++idx) {
            std::vector<u64> div = index_to_coeffs(idx, t, p);
            div.push_back(1);  // monic
            if (is_zero_poly(poly_rem(poly, div, p))) return false;
        }
    }
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> f;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

std::vector<u64> poly_pow(std::vector<u64> base, u64 e, const std::vector<u64>& modulus, u64 p) {
    std::vector<u64> r(modulus.size() - 1, 0);
    if (!r.empty()) r[0] = 1 % p;
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, modulus, p);
        base = poly_mulmod(base, base, modulus, p);
        e >>= 1;
    }
    return r;
}

bool is_one_poly(std::span<const u64> a) {
    if (a.empty() || a[0] != 1) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}

}  // namespace

u64 gfq_default_q(u64 p, u32 k, u32 m) {
    u128 load = static_cast<u128>(p - 1) * (p - 1) * k;  // one product's digit bound
    unsigned b = (m - 1) / (2 * k - 1);                  // largest b with (2k-1)*b < m
    if (b == 0 || (static_cast<u128>(1) << b) <= load)
        throw std::domain_error("gfq_default_q: no power-of-two radix fits p = " + std::to_string(p) +
                                ", k = " + std::to_string(k) + " into m = " + std::to_string(m));
    return u64(1) << b;
}

GfqField GfqField::build(u64 p, u32 k, u64 q, TableIndexing indexing, u64 table_cap) {
    if (!is_prime(p)) throw std::domain_error("GfqField: p = " + std::to_string(p) + " is not prime");
    if (k == 0) throw std::invalid_argument("GfqField: k must be >= 1");
    if (!pow_fits_u128(p, k) || checked_pow_u128(p, k) > table_cap) {
        std::string need = pow_fits_u128(p, k)
                               ? to_string(checked_pow_u128(p, k))
                               : std::to_string(p) + "^" + std::to_string(k);
        throw std::length_error("GfqField: needs " + need + " entries per table, budget is " +
                                std::to_string(table_cap));
    }

    GfqField f;
    f.p_ = p;
    f.k_ = k;
    f.order_ = static_cast<u64>(checked_pow_u128(p, k));
    f.q_ = q;
    f.indexing_ = indexing;

    u128 unit = static_cast<u128>(p - 1) * (p - 1) * k;
    u64 n_q = static_cast<u64>(std::min<u128>((q - 1) / unit, 1u << 30));
    if (n_q == 0) throw std::domain_error("GfqField: q admits no accumulation at all");
    f.params_ = QadicParams{p, q, k, static_cast<u32>(n_q), 53};
    ValidationResult vr = validate(f.params_);
    if (!vr.ok()) throw std::domain_error("GfqField: " + vr.detail);

    // lexicographically smallest monic irreducible of degree k
    u64 span = f.order_;
    bool found = false;
    for (u64 idx = 0; idx < span; ++idx) {
        std::vector<u64> cand = index_to_coeffs(idx, k, p);
        cand.push_back(1);
        if (is_irreducible(cand, p)) {
            f.modulus_ = std::move(cand);
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("GfqField: no irreducible polynomial found");

    // smallest generator in polynomial-index order
    u64 group = f.order_ - 1;
    std::vector<u64> factors = prime_factors(group);
    for (u64 idx = 1; idx < f.order_; ++idx) {
        std::vector<u64> cand = index_to_coeffs(idx, k, p);
        bool ok = true;
        for (u64 fac : factors) {
            if (is_one_poly(poly_pow(cand, group / fac, f.modulus_, p))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            f.generator_index_ = idx;
            break;
        }
    }
    if (f.generator_index_ == 0) throw std::logic_error("GfqField: no generator found");

    // discrete-log and evaluation tables
    u32 sentinel = static_cast<u32>(group);
    f.log_.assign(f.order_, sentinel);
    f.antilog_.assign(f.order_, 0);
    f.float_table_.assign(f.order_, 0.0);
    std::vector<u64> g = index_to_coeffs(f.generator_index_, k, p);
    std::vector<u64> cur(k, 0);
    cur[0] = 1 % p;
    for (u64 e = 0; e < group; ++e) {
        u64 idx = coeffs_to_index(cur, p);
        f.antilog_[e] = idx;
        f.log_[idx] = static_cast<u32>(e);
        double val = 0.0;
        for (std::size_t i = cur.size(); i-- > 0;) val = val * static_cast<double>(q) + static_cast<double>(cur[i]);
        f.float_table_[e] = val;
        cur = poly_mulmod(cur, g, f.modulus_, p);
    }
    f.float_table_[sentinel] = 0.0;

    // plus-one table: rep of (g^e + 1); index `sentinel` holds rep of 1
    f.plus1_.assign(f.order_, sentinel);
    for (u64 e = 0; e <= group; ++e) {
        u64 idx = (e == group) ? 0 : f.antilog_[e];
        u64 c0 = idx % p;
        u64 bumped = idx - c0 + (c0 + 1) % p;
        f.plus1_[e] = f.log_[bumped];
    }

    // low/high half-window tables
    unsigned pb = 0;
    while ((u64(1) << pb) < p) ++pb;
    f.lh_radix_ = indexing == TableIndexing::base_p ? p : u64(1) << pb;
    if (!pow_fits_u128(f.lh_radix_, k) || checked_pow_u128(f.lh_radix_, k) > table_cap)
        throw std::length_error("GfqField: half-window tables exceed the table budget");
    u64 lh_size = static_cast<u64>(checked_pow_u128(f.lh_radix_, k));
    f.l_table_.assign(lh_size, sentinel);
    f.h_table_.assign(lh_size, sentinel);

    u64 neg_q = (p - q % p) % p;
    std::vector<u64> tuple(k, 0);
    for (;;) {
        u64 idx = 0, scale = 1;
        for (u32 j = 0; j < k; ++j) {
            idx += tuple[j] * scale;
            scale *= f.lh_radix_;
        }
        // low half: residues mu_i = u_i - q*u_{i+1} mod p for i < k-1
        std::vector<u64> low(k >= 2 ? k - 1 : 1, 0);
        for (u32 i = 0; i + 1 < k; ++i) low[i] = (tuple[i] + neg_q * tuple[i + 1]) % p;
        f.l_table_[idx] = f.log_[coeffs_to_index(poly_rem(low, f.modulus_, p), p)];
        // high half: same residues shifted up by k-1, plus the top digit as-is
        std::vector<u64> high(2 * k - 1, 0);
        for (u32 i = 0; i + 1 < k; ++i) high[k - 1 + i] = (tuple[i] + neg_q * tuple[i + 1]) % p;
        high[2 * k - 2] = tuple[k - 1];
        f.h_table_[idx] = f.log_[coeffs_to_index(poly_rem(high, f.modulus_, p), p)];
        u32 j = 0;
        while (j < k && ++tuple[j] == p) tuple[j++] = 0;
        if (j == k) break;
    }

    f.q_powers_.resize(2 * k - 1);
    u64 pw = 1;
    for (u32 i = 0; i < 2 * k - 1; ++i) {
        f.q_powers_[i] = pw;
        if (i + 2 < 2 * k) pw *= q;
    }
    f.inv_p_ = ReciprocalDivisor::make(p);
    return f;
}

GfqElt GfqField::mul(GfqElt a, GfqElt b) const {
    if (is_zero(a) || is_zero(b)) return zero();
    u64 group = order_ - 1;
    return GfqElt{static_cast<u32>((static_cast<u64>(a.rep) + b.rep) % group)};
}

GfqElt GfqField::add(GfqElt a, GfqElt b, CostReport* cost) const {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    u64 group = order_ - 1;
    u64 diff = (static_cast<u64>(b.rep) + group - a.rep) % group;
    u32 t = plus1_[diff];
    if (cost) cost->table_accesses += 1;
    if (t == order_ - 1) return zero();  // b = -a
    return GfqElt{static_cast<u32>((a.rep + t) % group)};
}

GfqElt GfqField::neg(GfqElt a) const {
    if (is_zero(a) || p_ == 2) return a;
    u64 group = order_ - 1;
    return GfqElt{static_cast<u32>((a.rep + group / 2) % group)};
}

GfqElt GfqField::inverse(GfqElt a) const {
    if (is_zero(a)) throw std::domain_error("GfqField: zero has no inverse");
    u64 group = order_ - 1;
    return GfqElt{static_cast<u32>((group - a.rep) % group)};
}

GfqElt GfqField::pow(GfqElt a, u64 e) const {
    if (is_zero(a)) return e == 0 ? one() : zero();
    u64 group = order_ - 1;
    u128 r = (static_cast<u128>(a.rep) * (e % group)) % group;
    return GfqElt{static_cast<u32>(r)};
}

GfqElt GfqField::from_coeffs(std::span<const u64> coeffs) const {
    std::vector<u64> c(coeffs.begin(), coeffs.end());
    for (u64& v : c) v %= p_;
    if (c.size() > k_) c = poly_rem(std::move(c), modulus_, p_);
    c.resize(k_, 0);
    return GfqElt{log_[coeffs_to_index(c, p_)]};
}

std::vector<u64> GfqField::to_coeffs(GfqElt a) const {
    if (is_zero(a)) return std::vector<u64>(k_, 0);
    return index_to_coeffs(antilog_[a.rep], k_, p_);
}

GfqElt GfqField::from_index(u64 poly_index) const {
    if (poly_index >= order_) throw std::out_of_range("GfqField: polynomial index out of range");
    return GfqElt{log_[poly_index]};
}

u64 GfqField::to_index(GfqElt a) const { return is_zero(a) ? 0 : antilog_[a.rep]; }

u64 GfqField::memory_entries() const {
    return log_.size() + antilog_.size() + float_table_.size() + plus1_.size() + l_table_.size() +
           h_table_.size();
}

std::string GfqField::describe() const {
    std::ostringstream os;
    os << "p " << p_ << "\n";
    os << "k " << k_ << "\n";
    os << "modulus";
    for (u64 c : modulus_) os << " " << c;
    os << "\n";
    os << "generator";
    for (u64 c : index_to_coeffs(generator_index_, k_, p_)) os << " " << c;
    os << "\n";
    os << "q " << q_ << "\n";
    return os.str();
}

GfqElt fgdp_dot(std::span<const GfqElt> v1, std::span<const GfqElt> v2, const GfqField& field,
                CostReport* cost) {
    if (v1.size() != v2.size()) throw std::invalid_argument("fgdp_dot: vector length mismatch");
    GfqElt result = field.zero();
    u64 p = field.p_;
    u32 k = field.k_;
    u64 q = field.q_;
    bool pow2 = is_pow2(q);
    unsigned b = pow2 ? bit_width_u128(q) - 1 : 0;
    std::size_t n_q = field.params_.n_q;

    std::size_t groups = v1.empty() ? 0 : (v1.size() + n_q - 1) / n_q;
    std::vector<u64> u(2 * k - 1);

    for (std::size_t g = 0; g < groups; ++g) {
        std::size_t lo = g * n_q;
        std::size_t hi = std::min(v1.size(), lo + n_q);

        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            acc += field.float_table_[v1[i].rep] * field.float_table_[v2[i].rep];
            if (cost) {
                cost->mul_add += 1;
                cost->table_accesses += 2;
            }
        }
        u64 r = static_cast<u64>(acc);
        u64 rop = r <= field.inv_p_.r_max ? floor_div_premul(r, field.inv_p_) : r / p;
        if (cost) {
            cost->divisions += 1;
            cost->reduction_calls += 1;
        }
        // raw digits u_i, then straight to field elements via the two
        // half-window tables
        for (u32 i = 0; i < 2 * k - 1; ++i) {
            u64 a = pow2 ? (r >> (b * i)) : r / field.q_powers_[i];
            u64 c = pow2 ? (rop >> (b * i)) : rop / field.q_powers_[i];
            u[i] = a - p * c;
        }
        u64 idx_l = 0, idx_h = 0, scale = 1;
        for (u32 i = 0; i < k; ++i) {
            idx_l += u[i] * scale;
            idx_h += u[k - 1 + i] * scale;
            scale *= field.lh_radix_;
        }
        GfqElt l = GfqElt{field.l_table_[idx_l]};
        GfqElt h = GfqElt{field.h_table_[idx_h]};
        if (cost) cost->table_accesses += 2;
        GfqElt group_sum = field.add(h, l, cost);
        result = field.add(result, group_sum, cost);
    }
    return result;
}

GfqMatrix gfq_matmul(const GfqMatrix& a, const GfqMatrix& b, const GfqField& field,
                     CostReport* cost) {
    if (a.cols != b.rows) throw std::invalid_argument("gfq_matmul: inner dimensions differ");
    GfqMatrix c = GfqMatrix::zero(field, a.rows, b.cols);
    std::vector<GfqElt> row(a.cols), col(a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < b.cols; ++j) {
            for (std::size_t l = 0; l < a.cols; ++l) {
                row[l] = a.at(i, l);
                col[l] = b.at(l, j);
            }
            c.at(i, j) = fgdp_dot(row, col, field, cost);
        }
    }
    return c;
}

}  // namespace qpack
