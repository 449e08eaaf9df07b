// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0
//
// REDQ: reduce every q-adic digit of a word modulo p with a single
// division by p. The raw digits u_i = floor(r/q^i) - p*floor(rop/q^i)
// land in [0, p-1] and satisfy u_i = floor(r/q^i) mod p; the final
// residues follow from mu_i = u_i - q*u_{i+1} mod p, which is optionally
// tabulated in overlapping windows.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qpack/common.hpp"
#include "qpack/counters.hpp"
#include "qpack/fpdiv.hpp"

namespace qpack {

enum class TableIndexing : unsigned char {
    base_p = 0,       // tuple index = sum u_i * p^i
    binary_shift = 1  // tuple index = sum u_i * 2^(ceil(log2 p)*i); larger, but indexing is shifts
};

// Windowed correction lookup: entry for the tuple (u_0..u_{t-1}) holds the
// packed window (mu_0..mu_{t-1}) with mu_j = u_j - q*u_{j+1} mod p for
// j < t-1 and mu_{t-1} = u_{t-1}. Chained windows overlap by one element
// and drop their last entry except at the very end.
struct CorrectionTable {
    u64 p = 0;
    u64 q = 0;
    u32 k_window = 0;
    TableIndexing indexing = TableIndexing::base_p;
    u64 radix = 0;  // p, or 2^ceil(log2 p)
    std::vector<u64> entries;
};

enum class RedqMode : unsigned char {
    integer,      // u128 arithmetic; divisions by q^i become shifts when q = 2^b
    float_premul  // doubles with precomputed reciprocals; needs q^(d+1) <= r_max+1
};

struct RedqPlan {
    u64 p = 0;
    u64 q = 0;
    unsigned d = 0;  // highest digit index
    RedqMode mode = RedqMode::integer;
    u64 neg_q_mod_p = 0;  // (p - q mod p) mod p; zero iff p | q
    ReciprocalDivisor inv_p;
    std::vector<u128> q_powers;                    // q^0..q^d
    std::vector<ReciprocalDivisor> inv_q_powers;   // float mode only
    std::optional<CorrectionTable> correction;

    static RedqPlan build(u64 p, u64 q, unsigned d, RedqMode mode = RedqMode::integer);

    // Correction table must match this plan's p and q.
    void attach_correction(CorrectionTable table);
};

// All residues of r at once: returns the word whose digit i is
// (digit i of r) mod p. Exactly one division by p. r must be below
// q^(d+1) (checked).
u128 redq(u128 r, const RedqPlan& plan, CostReport* cost = nullptr);

// Raw digit pass only: u_i = floor(r/q^i) - p*floor(rop/q^i), i = 0..d.
std::vector<u64> redq_digits(u128 r, const RedqPlan& plan, CostReport* cost = nullptr);

// Full reduction, returned as the digit vector instead of a word.
std::vector<u64> redq_residues(u128 r, const RedqPlan& plan, CostReport* cost = nullptr);

// Allocation-free variant for hot loops; `out` is resized to d+1.
void redq_residues_into(u128 r, const RedqPlan& plan, std::vector<u64>& out,
                        CostReport* cost = nullptr);

// Every intermediate of one reduction, for regression against worked
// values and for the CLI trace output.
struct RedqTrace {
    u128 rop = 0;
    std::vector<u64> u;
    std::vector<u64> mu;
    u128 word = 0;
};
RedqTrace redq_trace(u128 r, const RedqPlan& plan);

// mu from u by the direct per-digit formula.
std::vector<u64> correct_direct(std::span<const u64> u, const RedqPlan& plan);

// Enumerates all p^k_window tuples. max_entries refuses oversized tables
// up front (the error message reports the required size).
CorrectionTable build_correction_table(u64 p, u64 q, u32 k_window, TableIndexing indexing,
                                       u64 max_entries = u64(1) << 26);

// mu from u through the table; performs exactly ceil(d/(k_window-1))
// accesses (none when d = 0).
std::vector<u64> correct_tabulated(std::span<const u64> u, const CorrectionTable& table,
                                   CostReport* cost = nullptr);

// (d+1) x (d+1) upper bidiagonal matrix over Z/pZ: ones on the diagonal,
// -q mod p above it. Applying it to u yields mu; its inverse is the
// upper-triangular matrix of powers of q.
std::vector<std::vector<u64>> correction_matrix(unsigned d, u64 q, u64 p);

// Versioned little-endian binary layout; identical bytes on every
// platform.
void save_correction_table(const CorrectionTable& table, std::ostream& out);
CorrectionTable load_correction_table(std::istream& in);

}  // namespace qpack
