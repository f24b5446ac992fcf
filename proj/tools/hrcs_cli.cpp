// hrcs: command-line driver for hash-family generation and verification,
// ingredient certification, composition, sampling, recovery, and benchmarks.
//
// Exit codes:
//   0  success / property holds
//   1  property check or certification failed
//   2  command-line usage error
//   3  input parse or file I/O error
//   4  structural mismatch (dimensions, alphabets, row counts)
//   5  recovery precondition violation
//   6  numerical failure
//   7  other library error
//
// All inputs are read and validated before any output file is opened, so a
// failing run never leaves partial output files.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrcs/io.hpp"
#include "hrcs/recover.hpp"

using namespace hrcs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitStructure = 4;
constexpr int kExitPrecondition = 5;
constexpr int kExitNumerical = 6;
constexpr int kExitOther = 7;

// ---------------------------------------------------------------- utilities

std::vector<int> parse_int_list(const std::string& s, char sep = ',') {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

// Shape syntax: parts separated by ',', shapes separated by ';', a trailing
// '*' marks a part as allowed to absorb missing entries.  Example: "1,4;2,3*".
std::vector<PartitionShape> parse_shapes(const std::string& s) {
    std::vector<PartitionShape> shapes;
    std::stringstream ss(s);
    std::string shape_tok;
    while (std::getline(ss, shape_tok, ';')) {
        if (shape_tok.empty()) continue;
        PartitionShape shape;
        std::stringstream ps(shape_tok);
        std::string part_tok;
        while (std::getline(ps, part_tok, ',')) {
            if (part_tok.empty()) continue;
            bool marked = part_tok.back() == '*';
            if (marked) part_tok.pop_back();
            shape.parts.push_back(ShapePart{std::stoi(part_tok), marked});
        }
        if (!shape.parts.empty()) shapes.push_back(std::move(shape));
    }
    if (shapes.empty()) throw ParseError("no shapes in '" + s + "'");
    return shapes;
}

Matrix matrix_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged CSV in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty CSV " + path);
    Matrix A(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) A(i, j) = rows[i][j];
    return A;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::HoldsSampled: return "holds-sampled";
        default: return "fails";
    }
}

json witness_to_json(const SeparationWitness& w) {
    json j;
    j["verdict"] = verdict_name(w.verdict);
    if (w.verdict == Verdict::HoldsSampled) j["sampled_trials"] = w.sampled_trials;
    if (w.verdict == Verdict::Fails) {
        j["columns"] = w.columns;
        j["partition"] = w.partition;
        if (!w.tau_set.empty()) j["tau_set"] = w.tau_set;
    }
    return j;
}

// q = p^e for a unique prime p; recovers (p, e) or throws.
std::pair<int, int> factor_prime_power(std::int64_t q) {
    for (int p = 2; static_cast<std::int64_t>(p) * p <= q || p <= q; ++p) {
        if (q % p != 0) continue;
        int e = 0;
        std::int64_t v = q;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (v != 1) throw NotLinearPattern("alphabet size is not a prime power");
        return {p, e};
    }
    throw NotLinearPattern("alphabet size is not a prime power");
}

// Rebuilds (field, alpha) from a linear pattern's alphabet size and width.
std::pair<std::shared_ptr<const Field>, int> linear_params(const HashFamily& P) {
    if (!P.row_labels()) throw NotLinearPattern("pattern has no row labels");
    std::int64_t q = P.alphabet_size(0) ;
    auto [p, e] = factor_prime_power(q);
    auto F = field_new(p, e);
    int alpha = 0;
    std::int64_t n = 1;
    while (n < P.num_cols()) {
        n *= q;
        ++alpha;
    }
    if (n != P.num_cols()) throw NotLinearPattern("column count is not q^alpha");
    return {F, alpha};
}

Vector random_sparse_signal(std::mt19937_64& rng, int n, int pos, int neg) {
    std::uniform_real_distribution<double> mag(0.5, 3.0);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    Vector x = Vector::Zero(n);
    for (int i = 0; i < pos; ++i) x(idx[i]) = mag(rng);
    for (int i = 0; i < neg; ++i) x(idx[pos + i]) = -mag(rng);
    return x;
}

// ---------------------------------------------------------------- commands

struct HfGenArgs {
    int p = 0, e = 1, alpha = 2, m = 0;
    std::string out;
};

int run_hf_gen(const HfGenArgs& a) {
    auto F = field_new(a.p, a.e);
    HashFamily P = gen_linear(F, a.alpha, a.m);
    save_json(a.out, hash_family_to_json(P));
    std::cout << "wrote " << P.num_rows() << "x" << P.num_cols() << " family to " << a.out
              << "\n";
    return kExitOk;
}

struct HfCheckArgs {
    std::string family, property, shapes_str, d_str, report;
    int t = 0, s = 0, tau = 0;
    double budget = 1e7;
    std::int64_t samples = 100000;
    std::uint64_t seed = 0x5eed;
};

int run_hf_check(const HfCheckArgs& a) {
    HashFamily P = hash_family_from_json(load_json(a.family));
    CheckOptions opts;
    opts.budget = a.budget;
    opts.samples = a.samples;
    opts.seed = a.seed;

    SeparationWitness w;
    json report;
    report["family"] = a.family;
    report["property"] = a.property;
    if (a.property == "perfect") {
        report["t"] = a.t;
        w = check_perfect(P, a.t, opts);
    } else if (a.property == "separating") {
        report["shapes"] = a.shapes_str;
        w = check_separating(P, parse_shapes(a.shapes_str), opts);
    } else if (a.property == "distributing") {
        report["t"] = a.t;
        report["s"] = a.s;
        w = check_distributing(P, a.t, a.s, opts);
    } else if (a.property == "strengthening") {
        report["d"] = a.d_str;
        report["tau"] = a.tau;
        report["shapes"] = a.shapes_str;
        std::vector<int> d = parse_int_list(a.d_str);
        if (static_cast<int>(d.size()) == 1) d.assign(P.num_rows(), d[0]);
        w = check_strengthening(P, d, a.tau, parse_shapes(a.shapes_str), opts);
    } else {
        throw ParseError("unknown property '" + a.property + "'");
    }
    report["result"] = witness_to_json(w);
    if (!a.report.empty()) save_json(a.report, report);
    std::cout << a.property << ": " << verdict_name(w.verdict) << "\n";
    if (w.verdict == Verdict::Fails) {
        std::cout << "witness columns:";
        for (int c : w.columns) std::cout << " " << c;
        std::cout << "\n";
    }
    return w.holds() ? kExitOk : kExitCheckFailed;
}

struct IngMakeArgs {
    std::string csv, scheme = "l0-brute-force", command, out;
    int k = 0, t = 0;
    bool vandermonde = false;
};

int run_ing_make(const IngMakeArgs& a) {
    Tolerance tol = Tolerance::from_env();
    Ingredient ing = [&] {
        if (a.vandermonde) return make_vandermonde_ingredient(a.k, a.t, {},
                                                              scheme_from_name(a.scheme), tol);
        return Ingredient(matrix_from_csv(a.csv), scheme_from_name(a.scheme), a.t, tol,
                          a.command);
    }();
    save_json(a.out, ingredient_to_json(ing));
    std::cout << "wrote " << ing.rows() << "x" << ing.cols() << " ingredient to " << a.out
              << "\n";
    return kExitOk;
}

struct IngCertifyArgs {
    std::string input, report;
    bool l1 = false;
};

int run_ing_certify(const IngCertifyArgs& a) {
    Ingredient ing = ingredient_from_json(load_json(a.input));
    ing.certify(a.l1);
    const CertificationRecord& c = ing.certification();
    bool ok = c.l0_holds && (!a.l1 || c.l1_holds);
    json report;
    report["ingredient"] = a.input;
    report["certified_t"] = ing.certified_t();
    report["l0_holds"] = c.l0_holds;
    if (a.l1) report["l1_holds"] = c.l1_holds;
    if (!a.report.empty()) save_json(a.report, report);
    std::cout << "l0 null space condition at t=" << ing.certified_t() << ": "
              << (c.l0_holds ? "holds" : "fails") << "\n";
    if (a.l1)
        std::cout << "l1 null space condition at t=" << ing.certified_t() << ": "
                  << (c.l1_holds ? "holds" : "fails") << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

struct ComposeArgs {
    std::string pattern, out, dense;
    std::vector<std::string> ingredients;
};

int run_compose(const ComposeArgs& a) {
    HashFamily P = hash_family_from_json(load_json(a.pattern));
    std::vector<Ingredient> ings;
    for (const auto& path : a.ingredients)
        ings.push_back(ingredient_from_json(load_json(path)));
    if (ings.size() == 1 && P.num_rows() > 1)  // one ingredient shared by all rows
        ings.assign(P.num_rows(), ings.front());
    ComposedMatrix B(P, std::move(ings));
    save_json(a.out, composed_to_json(B));
    if (!a.dense.empty()) save_text(a.dense, matrix_to_csv(B.dense()));
    std::cout << "wrote " << B.num_rows() << "x" << B.num_cols() << " composed matrix to "
              << a.out << "\n";
    return kExitOk;
}

struct SampleArgs {
    std::string composed, x_path, out, signal_out;
    int random_t = -1;
    std::uint64_t seed = 1;
};

int run_sample(const SampleArgs& a) {
    ComposedMatrix B = composed_from_json(load_json(a.composed));
    Vector x;
    if (a.random_t >= 0) {
        std::mt19937_64 rng(a.seed);
        int pos = (a.random_t + 1) / 2;
        x = random_sparse_signal(rng, B.num_cols(), pos, a.random_t - pos);
    } else {
        if (a.x_path.empty()) throw ParseError("need --x or --random-t");
        x = vector_from_json(load_json(a.x_path));
    }
    Vector y = sample(B, x);
    save_json(a.out, vector_to_json(y));
    if (!a.signal_out.empty()) save_json(a.signal_out, vector_to_json(x));
    std::cout << "wrote " << y.size() << " measurements to " << a.out << "\n";
    return kExitOk;
}

struct RecoverArgs {
    std::string mode, composed, y_path, d_str, out;
    int t = 0;
    double s = 0.0, eps = 0.0;
    bool refit = false;
};

int run_recover(const RecoverArgs& a) {
    ComposedMatrix B = composed_from_json(load_json(a.composed));
    Vector y = vector_from_json(load_json(a.y_path));
    Tolerance tol = Tolerance::from_env();

    json out;
    if (a.mode == "noisy") {
        NoisyEstimate est = recover_noisy(B, y, a.t, a.s, a.eps, tol, a.refit);
        out["x_star"] = vector_to_json(est.x_star);
        json support = json::array();
        for (int j = 0; j < est.x_star.size(); ++j)
            if (est.x_star(j) != 0.0) support.push_back(j);
        out["support"] = support;
        out["signatures"] = est.signatures;
        out["max_signature"] = est.max_signature;
        out["u_class"] = est.u_class;
        out["l_class"] = est.l_class;
        out["s"] = a.s;
        out["eps"] = a.eps;
        out["refit"] = a.refit;
    } else {
        RecoveryResult res;
        int alpha = 0;
        if (a.mode == "positive") {
            res = recover_positive(B, y, a.t, tol);
        } else if (a.mode == "general") {
            res = recover_general(B, y, a.t, tol);
        } else if (a.mode == "strengthened") {
            std::vector<int> d = parse_int_list(a.d_str);
            if (static_cast<int>(d.size()) == 1) d.assign(B.pattern().num_rows(), d[0]);
            res = recover_strengthened(B, y, a.t, d, tol);
        } else if (a.mode == "sublinear") {
            std::shared_ptr<const Field> F;
            std::tie(F, alpha) = linear_params(B.pattern());
            res = recover_sublinear(B, y, a.t, F, tol);
        } else {
            throw ParseError("unknown mode '" + a.mode + "'");
        }
        out = recovery_result_to_json(res);
        out["support"] = res.support();
        if (a.mode == "sublinear") out["alpha"] = alpha;
    }
    out["mode"] = a.mode;
    out["t"] = a.t;
    save_json(a.out, out);
    std::cout << "wrote recovery result to " << a.out << "\n";
    return kExitOk;
}

struct BenchArgs {
    std::string fields = "7,1;11,1;13,1", out, plot;
    int t = 2, alpha = 2, reps = 2000;
    std::uint64_t seed = 1;
};

int run_bench(const BenchArgs& a) {
    struct Row {
        std::int64_t n;
        double naive_us, sub_us;
        std::int64_t candidates;
    };
    std::vector<Row> rows;
    std::stringstream ss(a.fields);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        std::vector<int> pe = parse_int_list(tok);
        if (pe.size() != 2) throw ParseError("field spec must be p,e pairs separated by ';'");
        auto F = field_new(pe[0], pe[1], 1 << 20);
        int m = (a.alpha - 1) * ((a.t + 1) / 2) * ((a.t + 2) / 2) + 1;
        if (m < a.alpha) m = a.alpha;
        HashFamily P = gen_linear(F, a.alpha, m);
        int k = static_cast<int>(F->order());
        ComposedMatrix B(P,
                         std::vector<Ingredient>(
                             m, make_vandermonde_ingredient(k, std::max(a.t, 1))));
        std::mt19937_64 rng(a.seed);
        int pos = (a.t + 1) / 2;
        Vector x = random_sparse_signal(rng, B.num_cols(), pos, a.t - pos);
        Vector y = sample(B, x);
        auto zs = per_row_solve(B, y, std::vector<int>(m, std::max(a.t, 1)));
        Tolerance tol = Tolerance::from_env();
        auto labels = detail::classify(B, zs, y.lpNorm<Eigen::Infinity>(), tol);
        auto mx = detail::maximum_rows(zs, tol);

        // median of 5 timed runs, monotonic clock; support identification
        // only (the final least-squares solve is excluded)
        auto median5 = [&](auto&& phase) {
            std::vector<double> ts;
            for (int run = 0; run < 5; ++run) {
                auto t0 = std::chrono::steady_clock::now();
                for (int r = 0; r < a.reps; ++r) phase();
                ts.push_back(std::chrono::duration<double, std::micro>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count() /
                             a.reps);
            }
            std::sort(ts.begin(), ts.end());
            return ts[2];
        };

        Row row;
        row.n = B.num_cols();
        row.naive_us = median5([&] {
            RecoveryResult res;
            detail::identify_support_naive(P, labels, mx, res);
        });
        RecoveryResult res;
        row.sub_us = median5([&] {
            res = RecoveryResult{};
            detail::identify_support_sublinear(F, a.alpha, *P.row_labels(), labels, mx, res);
        });
        row.candidates = res.candidate_count;
        rows.push_back(row);
    }

    std::ostringstream csv;
    csv << "n,t,alpha,naive_time_us,sublinear_time_us,candidate_count\n";
    for (const Row& r : rows)
        csv << r.n << "," << a.t << "," << a.alpha << "," << r.naive_us << "," << r.sub_us
            << "," << r.candidates << "\n";
    save_text(a.out, csv.str());
    std::cout << csv.str();

    if (!a.plot.empty()) {
        std::ostringstream py;
        py << "#!/usr/bin/env python3\n"
           << "\"\"\"Plot support-identification times from the benchmark CSV.\"\"\"\n"
           << "import csv\n"
           << "import matplotlib\n"
           << "matplotlib.use('Agg')\n"
           << "import matplotlib.pyplot as plt\n\n"
           << "rows = list(csv.DictReader(open('" << a.out << "')))\n"
           << "n = [int(r['n']) for r in rows]\n"
           << "naive = [float(r['naive_time_us']) for r in rows]\n"
           << "sub = [float(r['sublinear_time_us']) for r in rows]\n"
           << "plt.figure()\n"
           << "plt.loglog(n, naive, 'o-', label='naive (scans all n columns)')\n"
           << "plt.loglog(n, sub, 's-', label='sublinear (candidate products)')\n"
           << "plt.xlabel('number of columns n')\n"
           << "plt.ylabel('support identification time (us)')\n"
           << "plt.legend()\n"
           << "plt.grid(True, which='both', alpha=0.3)\n"
           << "plt.savefig('bench.png', dpi=150, bbox_inches='tight')\n"
           << "print('wrote bench.png')\n";
        save_text(a.plot, py.str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchical compressive sensing toolkit"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 check failed, 2 usage, 3 parse/I-O, 4 structure,\n"
        "5 precondition, 6 numerical, 7 other.  HRCS_TOLERANCE overrides the\n"
        "zero threshold used in numerical decisions.");

    HfGenArgs hg;
    HfCheckArgs hc;
    IngMakeArgs im;
    IngCertifyArgs ic;
    ComposeArgs co;
    SampleArgs sa;
    RecoverArgs re;
    BenchArgs be;

    auto* hf = app.add_subcommand("hf", "hash family operations");
    hf->require_subcommand(1);
    auto* hfg = hf->add_subcommand("gen-linear", "generate a polynomial-evaluation family");
    hfg->add_option("--p", hg.p, "field characteristic (prime)")->required();
    hfg->add_option("--e", hg.e, "extension degree (q = p^e)");
    hfg->add_option("--alpha", hg.alpha, "polynomial degree bound (n = q^alpha)");
    hfg->add_option("--m", hg.m, "number of rows (max q + 1)")->required();
    hfg->add_option("--out", hg.out, "output family JSON")->required();

    auto* hfc = hf->add_subcommand("check", "verify a separation property");
    hfc->add_option("family", hc.family, "family JSON path")->required();
    hfc->add_option("--property", hc.property,
                    "perfect | separating | distributing | strengthening")
        ->required();
    hfc->add_option("--t", hc.t, "t for perfect/distributing");
    hfc->add_option("--s", hc.s, "s for distributing");
    hfc->add_option("--shapes", hc.shapes_str, "shapes, e.g. '1,4;2,3' ('*' marks a part)");
    hfc->add_option("--d", hc.d_str, "per-row symbol budgets (one value or m values)");
    hfc->add_option("--tau", hc.tau, "tau-set size for strengthening");
    hfc->add_option("--budget", hc.budget, "exhaustive test budget before sampling");
    hfc->add_option("--samples", hc.samples, "sample count when over budget");
    hfc->add_option("--seed", hc.seed, "sampling seed");
    hfc->add_option("--report", hc.report, "verdict report JSON path");

    auto* ing = app.add_subcommand("ingredient", "measurement matrix operations");
    ing->require_subcommand(1);
    auto* ingm = ing->add_subcommand("make", "bundle a matrix with a recovery scheme");
    ingm->add_option("--csv", im.csv, "matrix CSV path");
    ingm->add_flag("--vandermonde", im.vandermonde, "build a 2t x k Vandermonde matrix");
    ingm->add_option("--k", im.k, "columns (vandermonde)");
    ingm->add_option("--t", im.t, "certified sparsity")->required();
    ingm->add_option("--scheme", im.scheme,
                     "l0-brute-force | l1-program | least-squares | external");
    ingm->add_option("--command", im.command, "external scheme command");
    ingm->add_option("--out", im.out, "output ingredient JSON")->required();

    auto* ingc = ing->add_subcommand("certify", "check null space conditions");
    ingc->add_option("ingredient", ic.input, "ingredient JSON path")->required();
    ingc->add_flag("--l1", ic.l1, "also check the l1 condition");
    ingc->add_option("--report", ic.report, "certification report JSON path");

    auto* cmp = app.add_subcommand("compose", "column replacement: pattern + ingredients");
    cmp->add_option("--pattern", co.pattern, "pattern family JSON")->required();
    cmp->add_option("--ingredient", co.ingredients,
                    "ingredient JSON (repeat per row, or once for all rows)")
        ->required();
    cmp->add_option("--out", co.out, "composed matrix JSON")->required();
    cmp->add_option("--dense", co.dense, "also write the dense matrix CSV");

    auto* smp = app.add_subcommand("sample", "measure a signal: y = B x");
    smp->add_option("--composed", sa.composed, "composed matrix JSON")->required();
    smp->add_option("--x", sa.x_path, "signal vector JSON");
    smp->add_option("--random-t", sa.random_t, "generate a random t-sparse signal instead");
    smp->add_option("--seed", sa.seed, "signal generator seed");
    smp->add_option("--signal-out", sa.signal_out, "write the generated signal JSON");
    smp->add_option("--out", sa.out, "measurement vector JSON")->required();

    auto* rec = app.add_subcommand("recover", "recover a sparse signal from measurements");
    rec->add_option("--mode", re.mode,
                    "positive | general | strengthened | sublinear | noisy")
        ->required();
    rec->add_option("--composed", re.composed, "composed matrix JSON")->required();
    rec->add_option("--y", re.y_path, "measurement vector JSON")->required();
    rec->add_option("--t", re.t, "target sparsity")->required();
    rec->add_option("--d", re.d_str, "per-row sparsity bounds (strengthened mode)");
    rec->add_option("--s", re.s, "noise budget (noisy mode)");
    rec->add_option("--eps", re.eps, "per-row scheme error (noisy mode)");
    rec->add_flag("--refit", re.refit, "least-squares refit on the declared support (noisy)");
    rec->add_option("--out", re.out, "result JSON path")->required();

    auto* bn = app.add_subcommand("bench", "support-identification timing sweep");
    bn->add_option("--fields", be.fields, "semicolon list of p,e pairs (default 7,1;11,1;13,1)");
    bn->add_option("--t", be.t, "signal sparsity");
    bn->add_option("--alpha", be.alpha, "polynomial degree bound");
    bn->add_option("--reps", be.reps, "repetitions per timed run");
    bn->add_option("--seed", be.seed, "signal seed");
    bn->add_option("--out", be.out, "CSV output path")->required();
    bn->add_option("--plot", be.plot, "also write a self-contained plot script");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (hfg->parsed()) return run_hf_gen(hg);
        if (hfc->parsed()) return run_hf_check(hc);
        if (ingm->parsed()) return run_ing_make(im);
        if (ingc->parsed()) return run_ing_certify(ic);
        if (cmp->parsed()) return run_compose(co);
        if (smp->parsed()) return run_sample(sa);
        if (rec->parsed()) return run_recover(re);
        if (bn->parsed()) return run_bench(be);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStructure;
    } catch (const AlphabetMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStructure;
    } catch (const RowCountMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStructure;
    } catch (const NotLinearPattern& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const MissingSymbolPresent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const NoMaximumRow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const InsufficientRows& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ContainsMissingSymbol& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ResidualTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const SupportTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const RankDeficient& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Infeasible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitUsage;
}
