// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0

#include "qpack/redq.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace qpack {

namespace {

constexpr char kTableMagic[4] = {'Q', 'P', 'K', 'T'};
constexpr u32 kTableVersion = 1;

u64 ceil_log2(u64 v) {
    unsigned b = bit_width_u128(v);
    return is_pow2(v) ? b - 1 : b;
}

void check_input(u128 r, const RedqPlan& plan) {
    // a word with digits at or above q is not a valid q-adic development;
    // detectable here only as overflow past the top digit
    u128 top = is_pow2(plan.q) ? r >> ((bit_width_u128(plan.q) - 1) * plan.d)
                               : r / plan.q_powers.back();
    if (top >= plan.q)
        throw std::domain_error("redq: input exceeds q^(d+1), digits are not all below q");
}

void digits_into(u128 r, const RedqPlan& plan, std::vector<u64>& u) {
    unsigned n = plan.d + 1;
    u.resize(n);
    if (plan.mode == RedqMode::float_premul) {
        u64 r64 = static_cast<u64>(r);
        u64 rop = floor_div_premul(r64, plan.inv_p);
        for (unsigned i = 0; i < n; ++i) {
            u64 a = floor_div_premul(r64, plan.inv_q_powers[i]);
            u64 b = floor_div_premul(rop, plan.inv_q_powers[i]);
            u[i] = a - plan.p * b;
        }
        return;
    }
    u128 rop = r / plan.p;
    if (is_pow2(plan.q)) {
        unsigned b = bit_width_u128(plan.q) - 1;
        for (unsigned i = 0; i < n; ++i) {
            u128 hi = r >> (b * i);
            u128 lo = rop >> (b * i);
            u[i] = static_cast<u64>(hi - static_cast<u128>(plan.p) * lo);
        }
    } else {
        for (unsigned i = 0; i < n; ++i) {
            u128 hi = r / plan.q_powers[i];
            u128 lo = rop / plan.q_powers[i];
            u[i] = static_cast<u64>(hi - static_cast<u128>(plan.p) * lo);
        }
    }
}

// ascending order lets the correction run in place: slot i is rewritten
// only after it has served as the right-hand neighbour of slot i-1
void correct_direct_in_place(std::vector<u64>& u, u64 neg_q_mod_p, u64 p) {
    for (std::size_t i = 0; i + 1 < u.size(); ++i) u[i] = (u[i] + neg_q_mod_p * u[i + 1]) % p;
}

void correct_tabulated_in_place(std::vector<u64>& u, const CorrectionTable& table, CostReport* cost) {
    if (u.empty()) return;
    std::size_t d = u.size() - 1;
    if (d == 0) return;  // single digit: nothing to correct
    u32 t = table.k_window;
    std::size_t accesses = (d + t - 2) / (t - 1);  // ceil(d/(t-1))
    for (std::size_t a = 0; a < accesses; ++a) {
        std::size_t s = a * (t - 1);
        u64 idx = 0, scale = 1;
        for (u32 j = 0; j < t; ++j) {
            u64 digit = (s + j <= d) ? u[s + j] : 0;  // zero padding past the top digit
            idx += digit * scale;
            scale *= table.radix;
        }
        u64 entry = table.entries[idx];
        if (cost) cost->table_accesses += 1;
        for (u32 j = 0; j < t; ++j) {
            u64 m = entry % table.radix;
            entry /= table.radix;
            std::size_t i = s + j;
            if (i > d) break;
            // a window's own last slot is the true residue only at the top
            if (j + 1 < t || i == d) u[i] = m;
        }
    }
}

void correct_in_place(std::vector<u64>& u, const RedqPlan& plan, CostReport* cost) {
    if (plan.neg_q_mod_p == 0) return;  // q is a multiple of p: u already is mu
    if (plan.correction)
        correct_tabulated_in_place(u, *plan.correction, cost);
    else
        correct_direct_in_place(u, plan.neg_q_mod_p, plan.p);
}

u128 assemble(std::span<const u64> mu, const RedqPlan& plan) {
    u128 v = 0;
    if (is_pow2(plan.q)) {
        unsigned b = bit_width_u128(plan.q) - 1;
        for (std::size_t i = mu.size(); i-- > 0;) v = (v << b) | mu[i];
    } else {
        for (std::size_t i = mu.size(); i-- > 0;) v = v * plan.q + mu[i];
    }
    return v;
}

}  // namespace

RedqPlan RedqPlan::build(u64 p, u64 q, unsigned d, RedqMode mode) {
    if (p < 2) throw std::invalid_argument("RedqPlan: p must be >= 2");
    if (q < 2) throw std::invalid_argument("RedqPlan: q must be >= 2");
    // q^d must be computable for the digit shifts; the word itself may
    // occupy the full 128 bits
    if (!pow_fits_u128(q, d))
        throw std::invalid_argument("RedqPlan: q^d exceeds 128 bits; no word holds d+1 digits");

    RedqPlan plan;
    plan.p = p;
    plan.q = q;
    plan.d = d;
    plan.mode = mode;
    plan.neg_q_mod_p = (p - q % p) % p;
    plan.q_powers.resize(d + 1);
    u128 pw = 1;
    for (unsigned i = 0; i <= d; ++i) {
        plan.q_powers[i] = pw;
        if (i < d) pw *= q;
    }
    plan.inv_p = ReciprocalDivisor::make(p);

    if (mode == RedqMode::float_premul) {
        if (!pow_fits_u128(q, d + 1) || checked_pow_u128(q, d + 1) - 1 > plan.inv_p.r_max)
            throw std::invalid_argument("RedqPlan: float mode needs q^(d+1)-1 <= r_max = " +
                                        std::to_string(plan.inv_p.r_max));
        plan.inv_q_powers.reserve(d + 1);
        for (unsigned i = 0; i <= d; ++i)
            plan.inv_q_powers.push_back(ReciprocalDivisor::make(static_cast<u64>(plan.q_powers[i])));
    }
    return plan;
}

void RedqPlan::attach_correction(CorrectionTable table) {
    if (table.p != p || table.q != q)
        throw std::invalid_argument("attach_correction: table was built for different p or q");
    correction = std::move(table);
}

std::vector<u64> redq_digits(u128 r, const RedqPlan& plan, CostReport* cost) {
    check_input(r, plan);
    if (cost) cost->divisions += 1;
    std::vector<u64> u;
    digits_into(r, plan, u);
    return u;
}

void redq_residues_into(u128 r, const RedqPlan& plan, std::vector<u64>& out, CostReport* cost) {
    check_input(r, plan);
    if (cost) {
        cost->divisions += 1;
        cost->reduction_calls += 1;
    }
    digits_into(r, plan, out);
    correct_in_place(out, plan, cost);
}

std::vector<u64> redq_residues(u128 r, const RedqPlan& plan, CostReport* cost) {
    std::vector<u64> mu;
    redq_residues_into(r, plan, mu, cost);
    return mu;
}

u128 redq(u128 r, const RedqPlan& plan, CostReport* cost) {
    std::vector<u64> mu;
    redq_residues_into(r, plan, mu, cost);
    return assemble(mu, plan);
}

RedqTrace redq_trace(u128 r, const RedqPlan& plan) {
    check_input(r, plan);
    RedqTrace t;
    t.rop = (plan.mode == RedqMode::float_premul)
                ? static_cast<u128>(floor_div_premul(static_cast<u64>(r), plan.inv_p))
                : r / plan.p;
    digits_into(r, plan, t.u);
    t.mu = t.u;
    correct_in_place(t.mu, plan, nullptr);
    t.word = assemble(t.mu, plan);
    return t;
}

std::vector<u64> correct_direct(std::span<const u64> u, const RedqPlan& plan) {
    std::vector<u64> mu(u.begin(), u.end());
    if (plan.neg_q_mod_p != 0) correct_direct_in_place(mu, plan.neg_q_mod_p, plan.p);
    return mu;
}

CorrectionTable build_correction_table(u64 p, u64 q, u32 k_window, TableIndexing indexing,
                                       u64 max_entries) {
    if (p < 2) throw std::invalid_argument("build_correction_table: p must be >= 2");
    if (k_window < 2) throw std::invalid_argument("build_correction_table: window must cover >= 2 digits");

    u64 radix = indexing == TableIndexing::base_p ? p : u64(1) << ceil_log2(p);
    if (!pow_fits_u128(radix, k_window) || checked_pow_u128(radix, k_window) > max_entries) {
        std::string need = pow_fits_u128(radix, k_window)
                               ? to_string(checked_pow_u128(radix, k_window))
                               : (to_string(static_cast<u128>(radix)) + "^" + std::to_string(k_window));
        throw std::length_error("build_correction_table: table needs " + need +
                                " entries, budget is " + std::to_string(max_entries));
    }
    u64 size = static_cast<u64>(checked_pow_u128(radix, k_window));
    if (bit_width_u128(size) > 63)
        throw std::length_error("build_correction_table: packed window exceeds 63 bits");

    CorrectionTable t;
    t.p = p;
    t.q = q;
    t.k_window = k_window;
    t.indexing = indexing;
    t.radix = radix;
    t.entries.assign(size, 0);

    u64 neg_q = (p - q % p) % p;
    std::vector<u64> u(k_window, 0);
    for (;;) {
        u64 idx = 0, entry = 0, scale = 1;
        for (u32 j = 0; j < k_window; ++j) {
            idx += u[j] * scale;
            u64 mu = (j + 1 < k_window) ? (u[j] + neg_q * u[j + 1]) % p : u[j];
            entry += mu * scale;
            scale *= radix;
        }
        t.entries[idx] = entry;
        // odometer over [0,p)^k_window
        u32 j = 0;
        while (j < k_window && ++u[j] == p) u[j++] = 0;
        if (j == k_window) break;
    }
    return t;
}

std::vector<u64> correct_tabulated(std::span<const u64> u, const CorrectionTable& table,
                                   CostReport* cost) {
    std::vector<u64> mu(u.begin(), u.end());
    correct_tabulated_in_place(mu, table, cost);
    return mu;
}

std::vector<std::vector<u64>> correction_matrix(unsigned d, u64 q, u64 p) {
    u64 neg_q = (p - q % p) % p;
    std::vector<std::vector<u64>> m(d + 1, std::vector<u64>(d + 1, 0));
    for (unsigned i = 0; i <= d; ++i) {
        m[i][i] = 1 % p;
        if (i + 1 <= d) m[i][i + 1] = neg_q;
    }
    return m;
}

namespace {

void put_u32(std::ostream& out, u32 v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::ostream& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
u32 get_u32(std::istream& in) {
    u32 v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<u32>(static_cast<unsigned char>(in.get())) << (8 * i);
    return v;
}
u64 get_u64(std::istream& in) {
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(static_cast<unsigned char>(in.get())) << (8 * i);
    return v;
}

}  // namespace

void save_correction_table(const CorrectionTable& table, std::ostream& out) {
    out.write(kTableMagic, 4);
    put_u32(out, kTableVersion);
    put_u64(out, table.p);
    put_u64(out, table.q);
    put_u32(out, table.k_window);
    out.put(static_cast<char>(table.indexing));
    out.put(0);
    out.put(0);
    out.put(0);
    put_u64(out, table.entries.size());
    for (u64 e : table.entries) put_u64(out, e);
}

CorrectionTable load_correction_table(std::istream& in) {
    char magic[4] = {0};
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != std::string(kTableMagic, 4))
        throw std::runtime_error("load_correction_table: bad magic");
    u32 version = get_u32(in);
    if (version != kTableVersion)
        throw std::runtime_error("load_correction_table: unsupported version " + std::to_string(version));
    CorrectionTable t;
    t.p = get_u64(in);
    t.q = get_u64(in);
    t.k_window = get_u32(in);
    int tag = in.get();
    if (tag != 0 && tag != 1) throw std::runtime_error("load_correction_table: bad indexing tag");
    t.indexing = static_cast<TableIndexing>(tag);
    in.get();
    in.get();
    in.get();
    t.radix = t.indexing == TableIndexing::base_p ? t.p : u64(1) << ceil_log2(t.p);
    u64 n = get_u64(in);
    t.entries.resize(n);
    for (u64 i = 0; i < n; ++i) t.entries[i] = get_u64(in);
    if (!in) throw std::runtime_error("load_correction_table: truncated stream");
    return t;
}

}  // namespace qpack
