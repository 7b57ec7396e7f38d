// Command-line surface: construct families, print exponent tables, run the
// property suites, and analyze families from disk.
//
// Exit codes: 0 success, 1 failed property, 2 usage or parse error,
// 3 construction failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracelab/binomials.hpp"
#include "tracelab/construct.hpp"
#include "tracelab/decompose.hpp"
#include "tracelab/edge_list.hpp"
#include "tracelab/hypergraph.hpp"
#include "tracelab/oracle.hpp"
#include "tracelab/report_json.hpp"
#include "tracelab/rng.hpp"
#include "tracelab/suites.hpp"

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

struct ConstructArgs {
    std::string mode = "sparse-kk";
    tracelab::ConstructionSpec spec;
    std::string family_path = "family.txt";
    std::string report_path = "report.json";
};

int run_construct(const ConstructArgs& args) {
    using namespace tracelab;
    ConstructionSpec spec = args.spec;
    ConstructionReport report;
    if (args.mode == "sparse-kk") {
        if (spec.ell == 0) {
            // Smallest admissible clique count: ceil(n^r / C(x,k)).
            double cxk = static_cast<double>(
                binom_real(static_cast<long double>(spec.x), spec.k));
            if (!(cxk > 0.0))
                throw std::invalid_argument("construct: C(x,k) vanishes; pick k <= x");
            spec.ell = static_cast<std::uint64_t>(
                std::ceil(std::pow(static_cast<double>(spec.n), spec.r) / cxk - 1e-9));
            if (spec.ell == 0) spec.ell = 1;
        }
        report = build_sparse_kk_extremal(spec);
    } else if (args.mode == "trace-ub") {
        report = build_trace_ub_family(spec);
    } else {
        throw std::invalid_argument("construct: unknown mode " + args.mode);
    }

    std::ostringstream fam;
    write_edge_list(fam, report.family);
    write_text_file(args.family_path, fam.str());

    json j = to_json(report, spec);
    j["family_path"] = args.family_path;
    write_text_file(args.report_path, j.dump(2) + "\n");

    std::printf("mode=%s n=%d |F|=%zu e1=%s retries=%d -> %s, %s\n", args.mode.c_str(),
                spec.n, report.family.size(), report.e1_holds ? "yes" : "no",
                report.retries_used, args.family_path.c_str(), args.report_path.c_str());
    return 0;
}

struct BoundsArgs {
    int n = 1024;
    std::vector<double> r{2.0};
    std::vector<double> alpha{0.5};
    std::string out_path;  // empty = stdout
};

int run_bounds(const BoundsArgs& args) {
    using namespace tracelab;
    std::ostringstream os;
    os << "n,r,alpha,mu,lambda,lower_exponent,upper_exponent\n";
    for (double r : args.r)
        for (double a : args.alpha) {
            double mu = mu_exponent(r, a);
            double lam = lambda_exponent(a);
            os << args.n << "," << fmt9(r) << "," << fmt9(a) << "," << fmt9(mu) << ","
               << fmt9(lam) << "," << fmt9(lam * r) << "," << fmt9(mu) << "\n";
        }
    if (args.out_path.empty())
        std::fputs(os.str().c_str(), stdout);
    else
        write_text_file(args.out_path, os.str());
    return 0;
}

struct VerifyArgs {
    std::string suite = "all";
    tracelab::oracle::OracleBudget budget;
    std::uint64_t seed = tracelab::kDefaultSeed;
    std::string report_path = "verify_report.json";
    std::string witness_dir = ".";
};

int run_verify(const VerifyArgs& args) {
    using namespace tracelab;
    std::vector<VerificationReport> reports;
    try {
        reports = run_property_suite(args.suite, args.budget, args.seed);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    int failures = 0;
    for (const auto& r : reports) {
        std::printf("[%s] %s | %s | expected %s | observed %s\n", r.pass ? "ok" : "FAIL",
                    r.property.c_str(), r.instance.c_str(), r.expected.c_str(),
                    r.observed.c_str());
        if (!r.pass) {
            ++failures;
            if (r.witness) {
                std::string path = args.witness_dir + "/witness_" +
                                   std::to_string(failures) + ".txt";
                write_text_file(path, *r.witness);
                std::printf("  witness: %s\n", path.c_str());
            }
        }
    }
    write_text_file(args.report_path, to_json(reports).dump(2) + "\n");
    std::printf("%zu checks, %d failures -> %s\n", reports.size(), failures,
                args.report_path.c_str());
    return failures > 0 ? 1 : 0;
}

struct AnalyzeArgs {
    std::string input;
    std::string report_path;  // empty = stdout
    std::uint64_t seed = tracelab::kDefaultSeed;
    bool want_vc = false;
    int trace_k = -1;
    int shadow_i = -1;
    int wp_i = -1;
    int window = -1;
    std::uint64_t sample_trace = 0;
    std::uint64_t sample_wp = 0;
};

int run_analyze(const AnalyzeArgs& args) {
    using namespace tracelab;
    std::ifstream in(args.input);
    if (!in) {
        std::fprintf(stderr, "error: cannot open %s\n", args.input.c_str());
        return 2;
    }
    Hypergraph f = read_edge_list(in);

    json j{{"input", args.input}, {"n", f.n()}, {"edges", f.size()}};
    auto uni = f.uniformity();
    j["uniform"] = uni ? json(*uni) : json(nullptr);
    if (!f.empty()) {
        std::size_t lo = f.n() + 1, hi = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto sz = f.edge_vertices(i).size();
            lo = std::min(lo, sz);
            hi = std::max(hi, sz);
        }
        j["min_edge_size"] = lo;
        j["max_edge_size"] = hi;
    }

    // VC dimension is cheap only while C(n, d) enumeration stays small.
    if (args.want_vc || f.n() <= 16) j["vc"] = vc_dimension(f);
    if (args.trace_k >= 0) j["trace_value"] = trace_value(f, args.trace_k);
    if (args.shadow_i >= 0) j["shadow"] = shadow_size(f, args.shadow_i);
    if (args.wp_i >= 0) j["wp"] = wp(f, args.wp_i);

    int window = args.window >= 0 ? args.window : f.n() / 2;
    if (args.sample_trace > 0) {
        j["sampled_trace"] = to_json(
            sampled_trace_stats(f, window, args.sample_trace, args.seed));
        j["sampled_trace"]["window"] = window;
    }
    if (args.sample_wp > 0) {
        j["sampled_wp"] = to_json(sampled_wp_stats(f, window, args.sample_wp, args.seed));
        j["sampled_wp"]["window"] = window;
    }

    std::string text = j.dump(2) + "\n";
    if (args.report_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text_file(args.report_path, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trace and shadow laboratory"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    ConstructArgs cons;
    auto* c = app.add_subcommand("construct", "build a random extremal family");
    c->add_option("--mode", cons.mode, "sparse-kk or trace-ub")
        ->check(CLI::IsMember({"sparse-kk", "trace-ub"}))
        ->required();
    c->add_option("--n", cons.spec.n, "vertex count")->required();
    c->add_option("--r", cons.spec.r, "density exponent")->required();
    c->add_option("--alpha", cons.spec.alpha, "window fraction");
    c->add_option("--k", cons.spec.k, "edge size (sparse-kk)");
    c->add_option("--x", cons.spec.x, "seed-set size (sparse-kk)");
    c->add_option("--ell", cons.spec.ell, "seed-set count; 0 = smallest admissible");
    c->add_option("--seed", cons.spec.seed, "RNG seed");
    c->add_option("--retries", cons.spec.max_retries, "extra attempts on E1 failure");
    c->add_flag("--relaxed", cons.spec.relaxed, "waive the asymptotic-only regime caps");
    c->add_option("--sample-trials", cons.spec.sample_trials, "verification sample count");
    c->add_option("--exact-trace-trials", cons.spec.exact_trace_trials,
                  "windows rechecked with exact traces (trace-ub)");
    c->add_option("--out", cons.family_path, "family output path");
    c->add_option("--report", cons.report_path, "JSON report path");

    BoundsArgs bounds;
    auto* b = app.add_subcommand("bounds", "print exponent and constant table");
    b->add_option("--n", bounds.n, "vertex count for context");
    b->add_option("--r", bounds.r, "density exponents");
    b->add_option("--alpha", bounds.alpha, "window fractions");
    b->add_option("--out", bounds.out_path, "CSV path (default stdout)");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "run a property suite");
    v->add_option("--suite", verify.suite, "suite name or 'all'")->required();
    v->add_option("--max-n", verify.budget.max_n, "cap exhaustive instance sizes");
    v->add_option("--max-m", verify.budget.max_m, "cap family sizes");
    v->add_option("--max-families", verify.budget.max_families, "cap instance count");
    v->add_option("--time-limit", verify.budget.time_limit, "seconds before truncation");
    v->add_option("--seed", verify.seed, "RNG seed");
    v->add_option("--report", verify.report_path, "JSON report path");
    v->add_option("--witness-dir", verify.witness_dir, "directory for failure witnesses");

    AnalyzeArgs analyze;
    auto* a = app.add_subcommand("analyze", "statistics of an edge-list family");
    a->add_option("--input", analyze.input, "edge-list file")->required();
    a->add_option("--report", analyze.report_path, "JSON path (default stdout)");
    a->add_option("--seed", analyze.seed, "RNG seed");
    a->add_flag("--vc", analyze.want_vc, "force exact VC dimension");
    a->add_option("--trace-value", analyze.trace_k, "exact trace value at this k");
    a->add_option("--shadow", analyze.shadow_i, "exact shadow size at this i");
    a->add_option("--wp", analyze.wp_i, "exact max induced edges over i-windows");
    a->add_option("--window", analyze.window, "window size for sampling (default n/2)");
    a->add_option("--sample-trace", analyze.sample_trace, "sampled trace trials");
    a->add_option("--sample-wp", analyze.sample_wp, "sampled wp trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c)) return run_construct(cons);
        if (app.got_subcommand(b)) return run_bounds(bounds);
        if (app.got_subcommand(v)) return run_verify(verify);
        if (app.got_subcommand(a)) return run_analyze(analyze);
    } catch (const tracelab::ConstructionError& e) {
        std::fprintf(stderr, "construction failed: %s\n", e.what());
        return 3;
    } catch (const tracelab::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
