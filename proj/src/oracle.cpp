// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include "qpack/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpack::oracle {

BigUint256 BigUint256::from_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigUint256: empty decimal string");
    BigUint256 v;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("BigUint256: non-digit in \"" + s + "\"");
        v = v.mul_small(10).add(BigUint256(static_cast<u64>(c - '0')));
    }
    return v;
}

BigUint256 BigUint256::add(const BigUint256& o) const {
    BigUint256 r;
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = static_cast<u128>(limbs_[i]) + o.limbs_[i] + carry;
        r.limbs_[i] = static_cast<u64>(s);
        carry = s >> 64;
    }
    if (carry) throw std::overflow_error("BigUint256: addition exceeds 256 bits");
    return r;
}

BigUint256 BigUint256::mul_small(u64 m) const {
    BigUint256 r;
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = static_cast<u128>(limbs_[i]) * m + carry;
        r.limbs_[i] = static_cast<u64>(s);
        carry = s >> 64;
    }
    if (carry) throw std::overflow_error("BigUint256: multiplication exceeds 256 bits");
    return r;
}

BigUint256 BigUint256::mul(const BigUint256& o) const {
    u64 acc[8] = {0};
    for (int i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 s = static_cast<u128>(limbs_[i]) * o.limbs_[j] + acc[i + j] + carry;
            acc[i + j] = static_cast<u64>(s);
            carry = s >> 64;
        }
        acc[i + 4] += static_cast<u64>(carry);
    }
    for (int i = 4; i < 8; ++i)
        if (acc[i]) throw std::overflow_error("BigUint256: product exceeds 256 bits");
    BigUint256 r;
    std::copy(acc, acc + 4, r.limbs_);
    return r;
}

BigUint256 BigUint256::divmod_small(u64 divisor, u64& rem) const {
    if (divisor == 0) throw std::domain_error("BigUint256: division by zero");
    BigUint256 q;
    u128 r = 0;
    for (int i = 3; i >= 0; --i) {
        u128 cur = (r << 64) | limbs_[i];
        q.limbs_[i] = static_cast<u64>(cur / divisor);
        r = cur % divisor;
    }
    rem = static_cast<u64>(r);
    return q;
}

u64 BigUint256::mod_small(u64 divisor) const {
    u64 rem = 0;
    divmod_small(divisor, rem);
    return rem;
}

int BigUint256::compare(const BigUint256& o) const {
    for (int i = 3; i >= 0; --i) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

u128 BigUint256::to_u128() const {
    if (!fits_u128()) throw std::overflow_error("BigUint256: value exceeds 128 bits");
    return (static_cast<u128>(limbs_[1]) << 64) | limbs_[0];
}

std::string BigUint256::to_decimal() const {
    if (is_zero()) return "0";
    BigUint256 v = *this;
    std::string s;
    while (!v.is_zero()) {
        u64 digit = 0;
        v = v.divmod_small(10, digit);
        s.push_back(static_cast<char>('0' + digit));
    }
    std::reverse(s.begin(), s.end());
    return s;
}

DensePoly schoolbook_mul(const DensePoly& a, const DensePoly& b) {
    if (a.p != b.p) throw std::invalid_argument("schoolbook_mul: mismatched moduli");
    if (a.coeffs.empty() || b.coeffs.empty()) return DensePoly{a.p, {}};
    DensePoly r = DensePoly::zero(a.p, a.coeffs.size() + b.coeffs.size() - 1);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            r.coeffs[i + j] = (r.coeffs[i + j] + a.coeffs[i] * b.coeffs[j]) % a.p;
        }
    }
    return r;
}

std::vector<u64> naive_digits(const BigUint256& r, u64 q, unsigned d) {
    std::vector<u64> digits(d + 1);
    BigUint256 v = r;
    for (unsigned i = 0; i <= d; ++i) {
        u64 rem = 0;
        v = v.divmod_small(q, rem);
        digits[i] = rem;
    }
    if (!v.is_zero()) throw std::invalid_argument("naive_digits: r >= q^(d+1)");
    return digits;
}

std::vector<u64> naive_mod_digits(const BigUint256& r, u64 p, u64 q, unsigned d) {
    std::vector<u64> digits = naive_digits(r, q, d);
    for (u64& v : digits) v %= p;
    return digits;
}

u64 shifted_residue(const BigUint256& r, u64 q, unsigned i, u64 p) {
    BigUint256 v = r;
    u64 scratch = 0;
    for (unsigned j = 0; j < i; ++j) v = v.divmod_small(q, scratch);
    return v.mod_small(p);
}

std::vector<u64> poly_mod(const std::vector<u64>& a, const std::vector<u64>& modulus, u64 p) {
    if (modulus.empty() || modulus.back() != 1)
        throw std::invalid_argument("poly_mod: modulus must be monic");
    std::size_t k = modulus.size() - 1;
    std::vector<u64> r = a;
    for (u64& v : r) v %= p;
    while (r.size() > k) {
        u64 lead = r.back();
        std::size_t shift = r.size() - 1 - k;
        if (lead != 0) {
            for (std::size_t i = 0; i < k; ++i) {
                u64 sub = (lead * modulus[i]) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop_back();
    }
    r.resize(k, 0);
    return r;
}

std::vector<u64> naive_gfq_dot(const std::vector<std::vector<u64>>& v1,
                               const std::vector<std::vector<u64>>& v2,
                               const std::vector<u64>& modulus, u64 p) {
    if (v1.size() != v2.size()) throw std::invalid_argument("naive_gfq_dot: length mismatch");
    std::size_t k = modulus.size() - 1;
    std::vector<u64> acc(k == 0 ? 1 : k, 0);
    for (std::size_t t = 0; t < v1.size(); ++t) {
        DensePoly a{p, v1[t]};
        DensePoly b{p, v2[t]};
        DensePoly prod = schoolbook_mul(a, b);
        std::vector<u64> red = poly_mod(prod.coeffs, modulus, p);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            u64 c = i < red.size() ? red[i] : 0;
            acc[i] = (acc[i] + c) % p;
        }
    }
    return acc;
}

}  // namespace qpack::oracle
