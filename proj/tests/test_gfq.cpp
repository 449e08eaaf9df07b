// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "doctest.h"
#include "qpack/gfq.hpp"
#include "qpack/oracle.hpp"
#include "qpack/rng.hpp"

using namespace qpack;

namespace {

GfqField make_field(u64 p, u32 k, TableIndexing idx = TableIndexing::base_p) {
    return GfqField::build(p, k, gfq_default_q(p, k), idx);
}

GfqElt from_naive(const GfqField& f, const std::vector<u64>& coeffs) { return f.from_coeffs(coeffs); }

}  // namespace

TEST_CASE("GF(9): smallest modulus and generator") {
    GfqField f = make_field(3, 2);
    CHECK(f.order() == 9);
    CHECK(f.modulus_poly() == std::vector<u64>{1, 0, 1});  // X^2 + 1
    CHECK(f.to_coeffs(f.generator()) == std::vector<u64>{1, 1});  // X + 1
    CHECK(f.describe().find("modulus 1 0 1") != std::string::npos);
    CHECK(f.describe().find("generator 1 1") != std::string::npos);
}

TEST_CASE("GF(9): X times X is -1 = 2") {
    GfqField f = make_field(3, 2);
    GfqElt x = f.from_coeffs(std::vector<u64>{0, 1});
    CHECK(f.to_coeffs(f.mul(x, x)) == std::vector<u64>{2, 0});
}

TEST_CASE("identities and inverses") {
    for (auto [p, k] : {std::pair<u64, u32>{3, 2}, {2, 3}, {5, 2}, {7, 2}, {3, 3}, {2, 1}, {3, 1}}) {
        GfqField f = make_field(p, k);
        GfqElt g = f.generator();
        CHECK(f.mul(g, f.inverse(g)) == f.one());
        CHECK(f.mul(f.zero(), g) == f.zero());
        CHECK(f.add(g, f.zero()) == g);
        CHECK(f.pow(g, f.order() - 1) == f.one());
        // generator order is exactly p^k - 1
        for (u64 j = 1; j < f.order() - 1; ++j) CHECK_FALSE(f.pow(g, j) == f.one());
        // every nonzero element has an additive inverse
        for (u64 e = 0; e < f.order() - 1; ++e) {
            GfqElt a{static_cast<u32>(e)};
            CHECK(f.add(a, f.neg(a)) == f.zero());
        }
    }
}

TEST_CASE("log/antilog round trip over every nonzero element") {
    for (auto [p, k] : {std::pair<u64, u32>{3, 2}, {2, 3}, {7, 2}, {3, 3}}) {
        GfqField f = make_field(p, k);
        for (u64 idx = 1; idx < f.order(); ++idx) {
            GfqElt e = f.from_index(idx);
            CHECK_FALSE(f.is_zero(e));
            CHECK(f.to_index(e) == idx);
        }
        CHECK(f.is_zero(f.from_index(0)));
    }
}

TEST_CASE("field arithmetic matches the polynomial oracle exhaustively") {
    for (auto [p, k] : {std::pair<u64, u32>{3, 2}, {2, 3}, {5, 2}}) {
        GfqField f = make_field(p, k);
        for (u64 ia = 0; ia < f.order(); ++ia) {
            for (u64 ib = 0; ib < f.order(); ++ib) {
                GfqElt a = f.from_index(ia), b = f.from_index(ib);
                // addition: coefficient-wise
                std::vector<u64> ca = f.to_coeffs(a), cb = f.to_coeffs(b);
                std::vector<u64> sum(f.k(), 0);
                for (u32 i = 0; i < f.k(); ++i) sum[i] = (ca[i] + cb[i]) % p;
                CHECK(f.to_coeffs(f.add(a, b)) == sum);
                // multiplication: schoolbook then reduce by the modulus
                DensePoly pa{p, ca}, pb{p, cb};
                std::vector<u64> prod =
                    oracle::poly_mod(oracle::schoolbook_mul(pa, pb).coeffs, f.modulus_poly(), p);
                CHECK(f.to_coeffs(f.mul(a, b)) == prod);
            }
        }
    }
}

TEST_CASE("field axioms, randomized") {
    SplitMix64 rng(51);
    for (auto [p, k] : {std::pair<u64, u32>{7, 2}, {3, 3}, {5, 3}}) {
        GfqField f = make_field(p, k);
        for (int it = 0; it < 2000; ++it) {
            GfqElt a = f.from_index(rng.below(f.order()));
            GfqElt b = f.from_index(rng.below(f.order()));
            GfqElt c = f.from_index(rng.below(f.order()));
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            if (!f.is_zero(a)) CHECK(f.mul(a, f.inverse(a)) == f.one());
        }
    }
}

TEST_CASE("packed dot product: trivial shapes") {
    GfqField f = make_field(3, 2);
    GfqElt x = f.from_coeffs(std::vector<u64>{0, 1});
    std::vector<GfqElt> v1 = {x}, v2 = {f.one()};
    CHECK(fgdp_dot(v1, v2, f) == x);
    std::vector<GfqElt> empty;
    CHECK(fgdp_dot(empty, empty, f) == f.zero());
    std::vector<GfqElt> bad = {x, x};
    CHECK_THROWS_AS(fgdp_dot(bad, v1, f), std::invalid_argument);
}

TEST_CASE("packed dot product: the worked GF(9) pair") {
    GfqField f = make_field(3, 2);
    std::vector<GfqElt> v1 = {from_naive(f, {1, 1}), from_naive(f, {0, 2})};
    std::vector<GfqElt> v2 = {from_naive(f, {2, 1}), from_naive(f, {0, 1})};
    GfqElt r = fgdp_dot(v1, v2, f);
    CHECK(f.to_coeffs(r) == oracle::naive_gfq_dot({{1, 1}, {0, 2}}, {{2, 1}, {0, 1}},
                                                  f.modulus_poly(), 3));
}

TEST_CASE("packed dot product equals the naive oracle exhaustively on GF(9) and GF(8)") {
    for (auto [p, k] : {std::pair<u64, u32>{3, 2}, {2, 3}}) {
        for (TableIndexing idx : {TableIndexing::base_p, TableIndexing::binary_shift}) {
            GfqField f = make_field(p, k, idx);
            for (u64 ia = 0; ia < f.order(); ++ia) {
                for (u64 ib = 0; ib < f.order(); ++ib) {
                    GfqElt a = f.from_index(ia), b = f.from_index(ib);
                    std::vector<GfqElt> v1 = {a}, v2 = {b};
                    GfqElt got = fgdp_dot(v1, v2, f);
                    std::vector<u64> expect = oracle::naive_gfq_dot(
                        {f.to_coeffs(a)}, {f.to_coeffs(b)}, f.modulus_poly(), p);
                    CHECK(f.to_coeffs(got) == expect);
                }
            }
        }
    }
}

TEST_CASE("packed dot product, randomized lengths over larger fields") {
    SplitMix64 rng(52);
    for (auto [p, k] : {std::pair<u64, u32>{5, 2}, {7, 2}, {3, 3}}) {
        GfqField f = make_field(p, k);
        for (int it = 0; it < 500; ++it) {
            std::size_t len = 1 + rng.below(80);
            std::vector<GfqElt> v1(len), v2(len);
            std::vector<std::vector<u64>> n1(len), n2(len);
            for (std::size_t i = 0; i < len; ++i) {
                v1[i] = f.from_index(rng.below(f.order()));
                v2[i] = f.from_index(rng.below(f.order()));
                n1[i] = f.to_coeffs(v1[i]);
                n2[i] = f.to_coeffs(v2[i]);
            }
            GfqElt got = fgdp_dot(v1, v2, f);
            CHECK(f.to_coeffs(got) == oracle::naive_gfq_dot(n1, n2, f.modulus_poly(), p));
        }
    }
}

TEST_CASE("one division per reduction group") {
    GfqField f = make_field(3, 2);
    u64 n_q = f.params().n_q;
    SplitMix64 rng(53);
    for (std::size_t len : {std::size_t(1), std::size_t(100), std::size_t(3 * n_q + 1)}) {
        std::vector<GfqElt> v1(len), v2(len);
        for (std::size_t i = 0; i < len; ++i) {
            v1[i] = f.from_index(rng.below(f.order()));
            v2[i] = f.from_index(rng.below(f.order()));
        }
        CostReport cost;
        fgdp_dot(v1, v2, f, &cost);
        CHECK(cost.divisions == (len + n_q - 1) / n_q);
        CHECK(cost.reduction_calls == cost.divisions);
        CHECK(cost.mul_add == len);
    }
}

TEST_CASE("conversion epilogue stays within four table operations per group") {
    GfqField f = make_field(5, 2);
    SplitMix64 rng(54);
    std::vector<GfqElt> v1(8), v2(8);
    for (std::size_t i = 0; i < 8; ++i) {
        v1[i] = f.from_index(rng.below(f.order()));
        v2[i] = f.from_index(rng.below(f.order()));
    }
    CostReport cost;
    fgdp_dot(v1, v2, f, &cost);  // single group
    CHECK(cost.reduction_calls == 1);
    u64 epilogue = cost.table_accesses - 2 * cost.mul_add;  // minus the operand lookups
    CHECK(epilogue <= 4);
    CHECK(epilogue >= 2);  // L and H at minimum
}

TEST_CASE("table accounting: 6p^k entries under base-p indexing") {
    for (auto [p, k] : {std::pair<u64, u32>{3, 2}, {5, 2}, {2, 3}, {7, 2}}) {
        GfqField f = make_field(p, k, TableIndexing::base_p);
        u64 pk = f.order();
        CHECK(f.memory_entries() == 6 * pk);
        GfqField fb = make_field(p, k, TableIndexing::binary_shift);
        unsigned pb = 0;
        while ((u64(1) << pb) < p) ++pb;
        CHECK(fb.memory_entries() == 4 * pk + (u64(2) << (pb * k)));
    }
}

TEST_CASE("degenerate prime-field build") {
    GfqField f2 = make_field(2, 1);
    CHECK(f2.order() == 2);
    CHECK(f2.add(f2.one(), f2.one()) == f2.zero());
    CHECK(f2.mul(f2.one(), f2.one()) == f2.one());
    std::vector<GfqElt> v1 = {f2.one(), f2.one(), f2.one()};
    CHECK(fgdp_dot(v1, v1, f2) == f2.one());

    GfqField f3 = make_field(3, 1);
    CHECK(f3.to_coeffs(f3.mul(f3.from_coeffs(std::vector<u64>{2}),
                              f3.from_coeffs(std::vector<u64>{2}))) == std::vector<u64>{1});
}

TEST_CASE("matrix product against the triple loop") {
    SplitMix64 rng(55);
    GfqField f = make_field(3, 2);
    std::size_t n = 8;
    GfqMatrix a = GfqMatrix::zero(f, n, n), b = GfqMatrix::zero(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a.at(i, j) = f.from_index(rng.below(f.order()));
            b.at(i, j) = f.from_index(rng.below(f.order()));
        }
    GfqMatrix c = gfq_matmul(a, b, f);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            GfqElt acc = f.zero();
            for (std::size_t l = 0; l < n; ++l) acc = f.add(acc, f.mul(a.at(i, l), b.at(l, j)));
            CHECK(c.at(i, j) == acc);
        }
    }

    // identity times A
    GfqMatrix id = GfqMatrix::zero(f, n, n);
    for (std::size_t i = 0; i < n; ++i) id.at(i, i) = f.one();
    GfqMatrix ia = gfq_matmul(id, a, f);
    for (std::size_t i = 0; i < n * n; ++i) CHECK(ia.data[i] == a.data[i]);

    // 1x1 equals plain multiplication
    GfqMatrix x = GfqMatrix::zero(f, 1, 1), y = GfqMatrix::zero(f, 1, 1);
    x.at(0, 0) = f.generator();
    y.at(0, 0) = f.from_coeffs(std::vector<u64>{2, 1});
    CHECK(gfq_matmul(x, y, f).at(0, 0) == f.mul(x.at(0, 0), y.at(0, 0)));

    GfqMatrix bad = GfqMatrix::zero(f, 2, 3);
    CHECK_THROWS_AS(gfq_matmul(bad, bad, f), std::invalid_argument);
}

TEST_CASE("matmul with an inner dimension beyond one accumulation group") {
    SplitMix64 rng(56);
    GfqField f = GfqField::build(3, 2, 64);  // q = 64: n_q = 7 < inner dim
    REQUIRE(f.params().n_q == 7);
    std::size_t n = 12;
    GfqMatrix a = GfqMatrix::zero(f, n, n), b = GfqMatrix::zero(f, n, n);
    for (std::size_t i = 0; i < n * n; ++i) {
        a.data[i] = f.from_index(rng.below(f.order()));
        b.data[i] = f.from_index(rng.below(f.order()));
    }
    CostReport cost;
    GfqMatrix c = gfq_matmul(a, b, f, &cost);
    CHECK(cost.divisions == n * n * 2);  // ceil(12/7) groups per entry
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            GfqElt acc = f.zero();
            for (std::size_t l = 0; l < n; ++l) acc = f.add(acc, f.mul(a.at(i, l), b.at(l, j)));
            CHECK(c.at(i, j) == acc);
        }
}

TEST_CASE("build refusals") {
    CHECK_THROWS_AS(GfqField::build(4, 2, 64), std::domain_error);            // composite p
    CHECK_THROWS_AS(GfqField::build(3, 30, 1 << 16), std::length_error);      // table cap
    CHECK_THROWS_AS(gfq_default_q(1009, 4, 53), std::domain_error);           // no radix fits
}
