// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0
//
// GF(p^k) in discrete-logarithm representation, with the packed dot
// product: elements are looked up as q-adic floating-point evaluations,
// multiplied and accumulated numerically, and the resulting digit vector
// is converted straight back to field elements through two lookup tables
// (low and high halves), absorbing the reduction by the field modulus.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qpack/counters.hpp"
#include "qpack/params.hpp"
#include "qpack/redq.hpp"

namespace qpack {

// Field element: exponent of the generator, with p^k - 1 reserved as the
// zero sentinel.
struct GfqElt {
    u32 rep = 0;

    bool operator==(const GfqElt&) const = default;
};

class GfqField {
  public:
    // q must satisfy the packing bounds for degree-(2k-2) products; n_q
    // is derived from q as the largest accumulation count that fits.
    static GfqField build(u64 p, u32 k, u64 q, TableIndexing indexing = TableIndexing::base_p,
                          u64 table_cap = u64(1) << 20);

    u64 p() const { return p_; }
    u32 k() const { return k_; }
    u64 order() const { return order_; }  // p^k
    const QadicParams& params() const { return params_; }
    const std::vector<u64>& modulus_poly() const { return modulus_; }
    GfqElt generator() const { return GfqElt{static_cast<u32>(1 % (order_ - 1))}; }
    TableIndexing indexing() const { return indexing_; }

    GfqElt zero() const { return GfqElt{static_cast<u32>(order_ - 1)}; }
    GfqElt one() const { return GfqElt{0}; }
    bool is_zero(GfqElt a) const { return a.rep == order_ - 1; }

    GfqElt mul(GfqElt a, GfqElt b) const;
    GfqElt add(GfqElt a, GfqElt b, CostReport* cost = nullptr) const;
    GfqElt neg(GfqElt a) const;
    GfqElt inverse(GfqElt a) const;
    GfqElt pow(GfqElt a, u64 e) const;

    // polynomial-representation round trips (coefficient vectors over Z/pZ)
    GfqElt from_coeffs(std::span<const u64> coeffs) const;
    std::vector<u64> to_coeffs(GfqElt a) const;
    GfqElt from_index(u64 poly_index) const;
    u64 to_index(GfqElt a) const;

    double float_eval(GfqElt a) const { return float_table_[a.rep]; }

    // table-entry accounting: log, antilog, float, plus-one, L, H
    u64 memory_entries() const;

    // text fixture: p, k, modulus coefficients, generator
    std::string describe() const;

    friend GfqElt fgdp_dot(std::span<const GfqElt> v1, std::span<const GfqElt> v2,
                           const GfqField& field, CostReport* cost);

  private:
    u64 p_ = 0;
    u32 k_ = 0;
    u64 order_ = 0;
    u64 q_ = 0;
    QadicParams params_;
    TableIndexing indexing_ = TableIndexing::base_p;
    u64 lh_radix_ = 0;          // p or 2^ceil(log2 p)
    std::vector<u64> modulus_;  // monic, length k+1
    u64 generator_index_ = 0;
    std::vector<u32> log_;      // poly index -> rep
    std::vector<u64> antilog_;  // rep -> poly index (zero sentinel -> 0)
    std::vector<u32> plus1_;    // rep of (x + 1) from rep of x
    std::vector<double> float_table_;
    std::vector<u32> l_table_;  // (u_0..u_{k-1}) -> rep of the low half
    std::vector<u32> h_table_;  // (u_{k-1}..u_{2k-2}) -> rep of the high half
    std::vector<u64> q_powers_;
    ReciprocalDivisor inv_p_;
};

// Largest power-of-two radix for GF(p^k) packing within m mantissa bits.
u64 gfq_default_q(u64 p, u32 k, u32 m = 53);

// Dot product via the packed pipeline; inputs are split into groups of at
// most n_q elements, each reduced with a single division by p.
GfqElt fgdp_dot(std::span<const GfqElt> v1, std::span<const GfqElt> v2, const GfqField& field,
                CostReport* cost = nullptr);

struct GfqMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<GfqElt> data;

    GfqElt& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const GfqElt& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static GfqMatrix zero(const GfqField& f, std::size_t r, std::size_t c) {
        return GfqMatrix{r, c, std::vector<GfqElt>(r * c, f.zero())};
    }
};

// C = A*B, every entry a packed dot product.
GfqMatrix gfq_matmul(const GfqMatrix& a, const GfqMatrix& b, const GfqField& field,
                     CostReport* cost = nullptr);

}  // namespace qpack
