// qpack: packed q-adic arithmetic for small prime fields
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark and regression CLI. Subcommands:
//   mulpoly         modular polynomial products with operation counters
//   paper-examples  rerun the worked examples and check every intermediate
//   gfq             extension-field dot products / matrix products
//
// CSV rows share one schema across subcommands:
//   algo,p,q,k,d,N,n_q,n_d,mul_add,divisions,table_accesses,wall_time_ns,checksum
// With a fixed --seed everything except wall_time_ns is byte-identical
// between runs. Randomness comes from splitmix64 (seeded by --seed);
// values in [0,n) are reduced by modulo. Checksums fold the output
// coefficients with 64-bit FNV-1a.
//
// Set QPACK_TABLE_CACHE to a directory to reuse serialized correction
// tables between runs.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qpack/dqt.hpp"
#include "qpack/gfq.hpp"
#include "qpack/oracle.hpp"
#include "qpack/params.hpp"
#include "qpack/polymul.hpp"
#include "qpack/redq.hpp"
#include "qpack/rng.hpp"

using namespace qpack;

namespace {

struct BenchRecord {
    std::string algo;
    u64 p = 0, q = 0;
    u32 k = 0, d = 0;
    u64 n = 0, n_q = 0, n_d = 0;
    CostReport cost;
    u64 wall_ns = 0;
    u64 checksum = 0;
};

void append_csv(const std::string& path, const BenchRecord& r) {
    if (path.empty()) return;
    bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open csv file " + path);
    if (fresh) out << "algo,p,q,k,d,N,n_q,n_d,mul_add,divisions,table_accesses,wall_time_ns,checksum\n";
    out << r.algo << ',' << r.p << ',' << r.q << ',' << r.k << ',' << r.d << ',' << r.n << ','
        << r.n_q << ',' << r.n_d << ',' << r.cost.mul_add << ',' << r.cost.divisions << ','
        << r.cost.table_accesses << ',' << r.wall_ns << ','
        << std::hex << std::setw(16) << std::setfill('0') << r.checksum << std::dec
        << std::setfill(' ') << '\n';
}

u64 poly_checksum(const DensePoly& poly) {
    return fold_checksum(poly.coeffs.data(), poly.coeffs.size());
}

class WallClock {
  public:
    WallClock() : start_(std::chrono::steady_clock::now()) {}
    u64 ns() const {
        return static_cast<u64>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                    std::chrono::steady_clock::now() - start_)
                                    .count());
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

// correction-table reuse through QPACK_TABLE_CACHE
void wire_table_cache(RedqPlan& plan) {
    const char* dir = std::getenv("QPACK_TABLE_CACHE");
    if (!dir || !plan.correction) return;
    const CorrectionTable& built = *plan.correction;
    std::ostringstream name;
    name << dir << "/redq_p" << built.p << "_q" << built.q << "_w" << built.k_window << "_"
         << (built.indexing == TableIndexing::base_p ? "basep" : "shift") << ".tbl";
    std::string path = name.str();
    if (std::filesystem::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        CorrectionTable cached = load_correction_table(in);
        plan.attach_correction(std::move(cached));
        return;
    }
    std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::binary);
    save_correction_table(built, out);
}

std::vector<u64> parse_coeffs(const std::string& list, u64 p) {
    std::vector<u64> c;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(std::stoull(item) % p);
    return c;
}

int cmd_mulpoly(u64 p, u64 n, int d_flag, const std::string& algo, u64 seed, unsigned repeat,
                const std::string& csv, bool no_verify, u32 m, const std::string& fixed_a,
                const std::string& fixed_b) {
    SplitMix64 rng(seed);

    QadicParams params{};
    RedqPlan plan;
    u64 n_d = 0;
    if (algo == "fqt") {
        params = d_flag >= 0 ? qadic_for_degree(p, static_cast<u32>(d_flag), m)
                             : best_qadic(p, m, 1, true);
        plan = fqt_reduction_plan(params, params.k - 1);
        wire_table_cache(plan);
    } else if (algo == "delayed") {
        n_d = delayed_bound(p, m);
        if (n_d == 0) throw std::domain_error("delayed: p too large for m = " + std::to_string(m));
    } else if (algo != "oracle") {
        throw std::domain_error("unknown --algo " + algo);
    }

    for (unsigned rep = 0; rep < repeat; ++rep) {
        DensePoly a{p, {}}, b{p, {}};
        if (!fixed_a.empty() || !fixed_b.empty()) {
            a.coeffs = parse_coeffs(fixed_a, p);
            b.coeffs = parse_coeffs(fixed_b, p);
            if (a.coeffs.empty() || b.coeffs.empty())
                throw std::domain_error("--a and --b must both be given for fixed inputs");
        } else {
            for (u64 i = 0; i <= n; ++i) a.coeffs.push_back(rng.below(p));
            for (u64 i = 0; i <= n; ++i) b.coeffs.push_back(rng.below(p));
        }

        BenchRecord rec;
        rec.algo = algo;
        rec.p = p;
        rec.n = n;
        rec.n_d = n_d;
        DensePoly result{p, {}};
        WallClock clock;
        if (algo == "fqt") {
            result = fqt_mul(a, b, params.k - 1, params, plan, &rec.cost);
            rec.q = params.q;
            rec.k = params.k;
            rec.d = params.k - 1;
            rec.n_q = params.n_q;
        } else if (algo == "delayed") {
            result = delayed_mul(a, b, m, &rec.cost);
        } else {
            result = oracle::schoolbook_mul(a, b);
        }
        rec.wall_ns = clock.ns();
        rec.checksum = poly_checksum(result);

        if (!no_verify && algo != "oracle") {
            DensePoly want = oracle::schoolbook_mul(a, b);
            if (!(result == want)) {
                std::cerr << "verification FAILED against the schoolbook oracle\n";
                return 3;
            }
        }
        append_csv(csv, rec);
        std::cout << algo << " p=" << p << " N=" << n << " rep=" << rep
                  << " mul_add=" << rec.cost.mul_add << " divisions=" << rec.cost.divisions
                  << " table_accesses=" << rec.cost.table_accesses << " wall_ns=" << rec.wall_ns
                  << " checksum=" << std::hex << rec.checksum << std::dec
                  << (no_verify || algo == "oracle" ? "" : " verified=ok") << "\n";
    }
    return 0;
}

int cmd_paper_examples(bool inject_fault) {
    int bad = 0;
    auto check = [&](const std::string& what, const std::string& got, const std::string& want) {
        bool ok = got == want;
        std::cout << (ok ? "  ok   " : "  FAIL ") << what << ": " << got;
        if (!ok) std::cout << " (expected " << want << ")";
        std::cout << "\n";
        if (!ok) ++bad;
    };

    std::cout << "[1] radix-100 product over Z/3Z\n";
    QadicParams ex1{3, 100, 2, 1, 53};
    Packed prod1 = dqt_mul(pack(DensePoly{3, {1, 1}}, ex1), pack(DensePoly{3, {2, 1}}, ex1));
    check("101 x 102", to_string(prod1.value), "10302");
    std::vector<u64> digits1 = unpack(prod1, 3);
    check("digits", "[" + std::to_string(digits1[0]) + "," + std::to_string(digits1[1]) + "," +
                        std::to_string(digits1[2]) + "]",
          "[2,3,1]");
    DensePoly red1 = dqt_mul_poly(DensePoly{3, {1, 1}}, DensePoly{3, {2, 1}}, ex1);
    check("reduced", (red1 == DensePoly{3, {2, 0, 1}}) ? "X^2+2" : "?", "X^2+2");

    std::cout << "[2] five residues reduced at once (p | q)\n";
    u128 prod2 = static_cast<u128>(100020003) * 400050006;
    check("packed product", to_string(prod2), "40013002800270018");
    RedqPlan plan2 = RedqPlan::build(5, 10000, 4);
    check("reduced word", to_string(redq(prod2, plan2)), "40003000300020003");

    std::cout << "[3] full correction at p=23, q=10^6\n";
    RedqPlan plan3 = RedqPlan::build(23, 1000000, 3);
    RedqTrace t3 = redq_trace(parse_u128("1234005678009123004567"), plan3);
    check("rop", to_string(t3.rop), "53652420783005348024");
    auto fmt = [](const std::vector<u64>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "]";
    };
    check("u", fmt(t3.u), "[15,8,18,15]");
    check("mu", fmt(t3.mu), "[13,15,20,15]");

    std::cout << "[4] degree-6 correction through three window lookups\n";
    CorrectionTable q2 = build_correction_table(23, 1000000, 3, TableIndexing::base_p);
    if (inject_fault)
        for (u64& e : q2.entries) e ^= 1;  // simulate a corrupted cache
    RedqPlan plan4 = RedqPlan::build(23, 1000000, 6);
    SplitMix64 rng(4);
    bool windows_ok = true;
    u64 accesses = 0;
    for (int it = 0; it < 500; ++it) {
        std::vector<u64> u(7);
        for (u64& v : u) v = rng.below(23);
        CostReport cost;
        if (correct_tabulated(u, q2, &cost) != correct_direct(u, plan4)) windows_ok = false;
        accesses = cost.table_accesses;
    }
    check("window accesses", std::to_string(accesses), "3");
    check("tabulated == direct", windows_ok ? "yes" : "no", "yes");

    std::cout << (bad == 0 ? "all examples reproduced\n" : "MISMATCHES FOUND\n");
    return bad == 0 ? 0 : 4;
}

int cmd_gfq(u64 p, u32 k, const std::string& op, u64 len, u64 size, u64 seed,
            const std::string& csv, const std::string& indexing, bool dump_field) {
    TableIndexing idx = indexing == "binary_shift" ? TableIndexing::binary_shift : TableIndexing::base_p;
    GfqField field = GfqField::build(p, k, gfq_default_q(p, k), idx);
    if (dump_field) {
        std::cout << field.describe();
        return 0;
    }
    SplitMix64 rng(seed);
    if (op == "dot") {
        std::vector<GfqElt> v1(len), v2(len);
        std::vector<std::vector<u64>> n1(len), n2(len);
        for (u64 i = 0; i < len; ++i) {
            v1[i] = field.from_index(rng.below(field.order()));
            v2[i] = field.from_index(rng.below(field.order()));
            n1[i] = field.to_coeffs(v1[i]);
            n2[i] = field.to_coeffs(v2[i]);
        }
        BenchRecord packed;
        packed.algo = "fgdp";
        WallClock c1;
        GfqElt got = fgdp_dot(v1, v2, field, &packed.cost);
        packed.wall_ns = c1.ns();

        BenchRecord naive;
        naive.algo = "naive_dot";
        WallClock c2;
        std::vector<u64> want = oracle::naive_gfq_dot(n1, n2, field.modulus_poly(), p);
        naive.wall_ns = c2.ns();

        std::vector<u64> got_coeffs = field.to_coeffs(got);
        bool agree = got_coeffs == want;
        for (BenchRecord* r : {&packed, &naive}) {
            r->p = p;
            r->q = field.params().q;
            r->k = k;
            r->n = len;
            r->n_q = field.params().n_q;
            r->checksum = fold_checksum(want.data(), want.size());
        }
        packed.checksum = fold_checksum(got_coeffs.data(), got_coeffs.size());
        append_csv(csv, packed);
        append_csv(csv, naive);
        u64 expected_divs = len == 0 ? 0 : (len + field.params().n_q - 1) / field.params().n_q;
        std::cout << "gfq dot p=" << p << " k=" << k << " len=" << len
                  << " divisions=" << packed.cost.divisions << " (expected " << expected_divs << ")"
                  << " table_accesses=" << packed.cost.table_accesses
                  << " agreement=" << (agree ? "ok" : "MISMATCH") << "\n";
        return agree ? 0 : 3;
    }
    if (op == "matmul") {
        GfqMatrix a = GfqMatrix::zero(field, size, size), b = GfqMatrix::zero(field, size, size);
        for (GfqElt& e : a.data) e = field.from_index(rng.below(field.order()));
        for (GfqElt& e : b.data) e = field.from_index(rng.below(field.order()));

        BenchRecord packed;
        packed.algo = "fgdp";
        WallClock c1;
        GfqMatrix c = gfq_matmul(a, b, field, &packed.cost);
        packed.wall_ns = c1.ns();

        BenchRecord naive;
        naive.algo = "naive_dot";
        WallClock c2;
        GfqMatrix want = GfqMatrix::zero(field, size, size);
        for (u64 i = 0; i < size; ++i)
            for (u64 j = 0; j < size; ++j) {
                GfqElt acc = field.zero();
                for (u64 l = 0; l < size; ++l)
                    acc = field.add(acc, field.mul(a.at(i, l), b.at(l, j)));
                want.at(i, j) = acc;
            }
        naive.wall_ns = c2.ns();

        bool agree = c.data == want.data;
        std::vector<u64> folded;
        for (const GfqElt& e : want.data) folded.push_back(field.to_index(e));
        for (BenchRecord* r : {&packed, &naive}) {
            r->p = p;
            r->q = field.params().q;
            r->k = k;
            r->n = size;
            r->n_q = field.params().n_q;
            r->checksum = fold_checksum(folded.data(), folded.size());
        }
        append_csv(csv, packed);
        append_csv(csv, naive);
        std::cout << "gfq matmul p=" << p << " k=" << k << " size=" << size
                  << " divisions=" << packed.cost.divisions
                  << " agreement=" << (agree ? "ok" : "MISMATCH") << "\n";
        return agree ? 0 : 3;
    }
    throw std::domain_error("unknown --op " + op);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"packed q-adic modular arithmetic bench"};
    app.require_subcommand(1);

    // mulpoly
    u64 mp_p = 3, mp_n = 100, mp_seed = 42;
    int mp_d = -1;
    unsigned mp_repeat = 1;
    u32 mp_m = 53;
    std::string mp_algo = "fqt", mp_csv;
    bool mp_no_verify = false;
    CLI::App* mulpoly = app.add_subcommand("mulpoly", "modular polynomial multiplication bench");
    mulpoly->add_option("--p", mp_p, "prime modulus")->required();
    mulpoly->add_option("--n", mp_n, "polynomial degree N")->required();
    mulpoly->add_option("--d", mp_d, "chunk degree (default: from the parameter search)");
    mulpoly->add_option("--algo", mp_algo, "fqt | delayed | oracle");
    mulpoly->add_option("--seed", mp_seed, "prng seed");
    mulpoly->add_option("--repeat", mp_repeat, "number of seeded repetitions");
    mulpoly->add_option("--csv", mp_csv, "append bench records to this file");
    mulpoly->add_option("--m", mp_m, "mantissa/word bits (24, 53, 64, 128)");
    mulpoly->add_flag("--no-verify", mp_no_verify, "skip the schoolbook cross-check");
    std::string mp_a, mp_b;
    mulpoly->add_option("--a", mp_a, "fixed input A as comma-separated coefficients, low first");
    mulpoly->add_option("--b", mp_b, "fixed input B as comma-separated coefficients, low first");

    // paper-examples
    bool pe_fault = false;
    CLI::App* examples = app.add_subcommand("paper-examples", "re-run the worked examples");
    examples->add_flag("--inject-fault", pe_fault, "corrupt a table entry to prove detection");

    // gfq
    u64 gf_p = 3, gf_len = 100, gf_size = 8, gf_seed = 42;
    u32 gf_k = 2;
    std::string gf_op = "dot", gf_csv, gf_indexing = "base_p";
    bool gf_dump = false;
    CLI::App* gfq = app.add_subcommand("gfq", "extension-field kernels");
    gfq->add_option("--p", gf_p, "prime characteristic")->required();
    gfq->add_option("--k", gf_k, "extension degree")->required();
    gfq->add_option("--op", gf_op, "dot | matmul");
    gfq->add_option("--len", gf_len, "dot-product length");
    gfq->add_option("--size", gf_size, "matrix dimension for matmul");
    gfq->add_option("--seed", gf_seed, "prng seed");
    gfq->add_option("--csv", gf_csv, "append bench records to this file");
    gfq->add_option("--indexing", gf_indexing, "base_p | binary_shift");
    gfq->add_flag("--dump-field", gf_dump, "print the field fixture and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mulpoly->parsed())
            return cmd_mulpoly(mp_p, mp_n, mp_d, mp_algo, mp_seed, mp_repeat, mp_csv, mp_no_verify,
                               mp_m, mp_a, mp_b);
        if (examples->parsed()) return cmd_paper_examples(pe_fault);
        if (gfq->parsed())
            return cmd_gfq(gf_p, gf_k, gf_op, gf_len, gf_size, gf_seed, gf_csv, gf_indexing, gf_dump);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
