// Command-line front end: generate instances, inspect k-mer sets and graphs,
// detect repeat events, solve for reconstructions, and run experiment grids.
//
// Exit codes: 0 success; solve uses 0/1/2 for unique/ambiguous/unknown;
// 64 usage errors, 65 bad input data, 70 internal faults.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "krec/krec.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

int cmd_generate(unsigned n, unsigned m, std::uint64_t seed) {
    const krec::Params p = krec::make_params(n, m, 2); // k unused here
    std::cout << krec::generate_sources(p, seed).to_text();
    return 0;
}

int cmd_kmers(const std::string& in, unsigned k) {
    const auto x = krec::SourceSet::from_text(slurp(in));
    std::cout << krec::extract_kmer_set(x, k).to_text();
    return 0;
}

int cmd_dump_graph(const std::string& in, unsigned m) {
    const auto y = krec::KmerSet::from_text(slurp(in));
    const auto g = krec::build_graph(y);
    if (m > 0) {
        try {
            const auto lab = krec::label_multiplicities(g, m);
            std::cout << krec::dump_graph(g, &lab.edge_count);
            return 0;
        } catch (const krec::StructureViolation&) {
            // fall through to unlabeled dump
        }
    }
    std::cout << krec::dump_graph(g);
    return 0;
}

int cmd_detect(const std::string& in, unsigned k, const std::string& which) {
    const auto x = krec::SourceSet::from_text(slurp(in));
    const std::string kinds = which.empty() ? "ABCDH" : which;
    for (char c : kinds) {
        krec::EventKind kind;
        switch (c) {
            case 'A': kind = krec::EventKind::A; break;
            case 'B': kind = krec::EventKind::B; break;
            case 'C': kind = krec::EventKind::C; break;
            case 'D': kind = krec::EventKind::D; break;
            case 'H': kind = krec::EventKind::H; break;
            default: throw std::invalid_argument("unknown event kind");
        }
        if (auto w = krec::detect(kind, x, k)) std::cout << w->to_json() << "\n";
    }
    return 0;
}

int cmd_solve(const std::string& in, unsigned m, unsigned n, std::uint64_t max_solutions,
              std::uint64_t max_expansions) {
    const auto y = krec::KmerSet::from_text(slurp(in));
    krec::Budget budget{max_solutions, max_expansions};
    const auto r = krec::enumerate_reconstructions(y, m, n, budget);
    for (std::size_t i = 0; i < r.solutions.size(); ++i) {
        if (i) std::cout << "\n";
        std::cout << r.solutions[i].to_text();
    }
    std::cerr << "solutions: " << r.solutions.size()
              << (r.exhausted ? " (search exhausted)" : " (budget hit)")
              << ", expansions: " << r.expansions << "\n";
    if (r.solutions.size() >= 2) return 1;
    if (r.exhausted && r.solutions.size() == 1) return 0;
    if (r.exhausted) {
        std::cerr << "no reconstruction exists for these parameters\n";
        return kExitData;
    }
    return 2;
}

int cmd_swap(const std::string& in, unsigned k, const std::string& event) {
    const auto x = krec::SourceSet::from_text(slurp(in));
    std::optional<krec::EventWitness> w;
    krec::SourceSet out = x;
    if (event == "D") {
        w = krec::detect_D(x, k);
        if (w) out = krec::construct_swap_D(x, *w);
    } else if (event == "H") {
        w = krec::detect_H(x, k);
        if (w) out = krec::construct_swap_H(x, *w);
    } else {
        throw std::invalid_argument("swap: event must be D or H");
    }
    if (!w) {
        std::cerr << "no " << event << " witness present\n";
        return kExitData;
    }
    std::cerr << w->to_json() << "\n";
    std::cout << out.to_text();
    return 0;
}

int cmd_bounds(unsigned n, unsigned m, unsigned k, double alpha, double beta,
               bool scaled) {
    const krec::Params p =
        scaled ? krec::derive_params(n, alpha, beta) : krec::make_params(n, m, k);
    const auto b = krec::event_bounds(p);
    const auto mv = krec::moments_V(p);
    const auto mu = krec::moments_U(p);
    std::printf("n=%u m=%u k=%u\n", p.n, p.m, p.k);
    if (p.alpha) {
        const auto rc = krec::classify_region(*p.alpha, *p.beta);
        std::printf("alpha=%.10g beta=%.10g region=%s binding=%s\n", *p.alpha, *p.beta,
                    krec::verdict_name(rc.verdict), krec::bound_name(rc.binding));
    }
    std::printf("Pr[A] <= %.10g\n", b.a);
    std::printf("Pr[B] <= %.10g\n", b.b);
    std::printf("Pr[C] <= %.10g\n", b.c);
    std::printf("Pr[D] <= %.10g\n", b.d);
    std::printf("Pr[any repeat] <= %.10g\n", krec::repeat_free_bound(p));
    std::printf("E[V] = %.10g  E[V^2] <= %.10g  PZ >= %.10g\n", mv.e_first,
                mv.e_second_bound, mv.pz_lower);
    std::printf("E[U] >= %.10g  E[U^2] <= %.10g  PZ >= %.10g\n", mu.e_first,
                mu.e_second_bound, mu.pz_lower);
    return 0;
}

int cmd_region(const std::string& config_path, const std::string& out_csv,
               const std::string& out_svg, const std::string& svg_measure,
               unsigned threads) {
    const auto config = krec::ExperimentConfig::from_json(slurp(config_path));
    const auto reports = krec::run_grid(config, threads);
    spill(out_csv, krec::emit_csv(reports));
    if (!out_svg.empty()) spill(out_svg, krec::emit_svg_heatmap(reports, svg_measure));
    return 0;
}

int cmd_oracle(unsigned n, unsigned m, unsigned k, unsigned instances,
               std::uint64_t seed) {
    const krec::Params p = krec::make_params(n, m, k);
    unsigned agree = 0;
    for (unsigned i = 0; i < instances; ++i) {
        const auto x = krec::generate_sources(p, krec::derive_seed(seed, i));
        const auto y = krec::extract_kmer_set(x, k);
        krec::Budget budget{std::uint64_t(-1), std::uint64_t(-1)};
        const auto fast = krec::enumerate_reconstructions(y, m, n, budget);
        const auto slow = krec::brute_force_oracle(y, m, n);
        bool same = fast.exhausted && fast.solutions.size() == slow.size();
        for (std::size_t s = 0; same && s < slow.size(); ++s)
            same = fast.solutions[s].multiset_equal(slow[s]);
        agree += same;
    }
    std::printf("agreement %u/%u\n", agree, instances);
    return agree == instances ? 0 : kExitInternal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-sequence reconstruction from k-mer unions"};
    app.set_version_flag("--version", std::string("krec ") + kVersion);
    app.require_subcommand(1);

    unsigned n = 0, m = 0, k = 0, instances = 100, threads = 1;
    std::uint64_t seed = 1, max_solutions = 2, max_expansions = 1'000'000;
    double alpha = 0, beta = 0;
    std::string in, event, config_path, out_csv, out_svg, svg_measure = "nonunique";

    auto* gen = app.add_subcommand("generate", "draw m random n-bit sequences");
    gen->add_option("--n", n, "sequence length")->required();
    gen->add_option("--m", m, "number of sequences")->required();
    gen->add_option("--seed", seed, "rng seed");

    auto* km = app.add_subcommand("kmers", "extract the (k+1)-mer union of sequences");
    km->add_option("--k", k, "node word length")->required();
    km->add_option("--in", in, "sequence file (default stdin)");

    auto* dg = app.add_subcommand("dump-graph", "print de Bruijn graph edges");
    dg->add_option("--in", in, "k-mer set file (default stdin)");
    dg->add_option("--m", m, "label multiplicities for m sequences");

    auto* det = app.add_subcommand("detect", "report repeat-event witnesses as JSON");
    det->add_option("--k", k, "node word length")->required();
    det->add_option("--in", in, "sequence file (default stdin)");
    det->add_option("--event", event, "restrict to kinds, e.g. AD (default ABCDH)");

    auto* sol = app.add_subcommand("solve", "enumerate reconstructions of a k-mer set");
    sol->add_option("--m", m, "number of sequences")->required();
    sol->add_option("--n", n, "sequence length")->required();
    sol->add_option("--in", in, "k-mer set file (default stdin)");
    sol->add_option("--max-solutions", max_solutions, "stop after this many");
    sol->add_option("--max-expansions", max_expansions, "search step budget");

    auto* sw = app.add_subcommand("swap", "apply the canonical D- or H-swap");
    sw->add_option("--k", k, "node word length")->required();
    sw->add_option("--event", event, "D or H")->required();
    sw->add_option("--in", in, "sequence file (default stdin)");

    auto* bo = app.add_subcommand("bounds", "print closed-form bounds and moments");
    bo->add_option("--n", n, "sequence length")->required();
    bo->add_option("--m", m, "number of sequences");
    bo->add_option("--k", k, "node word length");
    auto* oa = bo->add_option("--alpha", alpha, "scaling exponent for m");
    auto* ob = bo->add_option("--beta", beta, "scaling exponent for k");
    oa->needs(ob);
    ob->needs(oa);

    auto* reg = app.add_subcommand("region", "run an experiment grid to CSV/SVG");
    reg->add_option("--config", config_path, "experiment JSON")->required();
    reg->add_option("--out-csv", out_csv, "CSV output path")->required();
    reg->add_option("--out-svg", out_svg, "SVG heatmap output path");
    reg->add_option("--svg-measure", svg_measure, "measure label to plot");
    reg->add_option("--threads", threads, "worker threads");

    auto* orc = app.add_subcommand("oracle", "cross-check solver against brute force");
    orc->add_option("--n", n, "sequence length")->required();
    orc->add_option("--m", m, "number of sequences")->required();
    orc->add_option("--k", k, "node word length")->required();
    orc->add_option("--instances", instances, "number of random instances");
    orc->add_option("--seed", seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(n, m, seed);
        if (km->parsed()) return cmd_kmers(in, k);
        if (dg->parsed()) return cmd_dump_graph(in, m);
        if (det->parsed()) return cmd_detect(in, k, event);
        if (sol->parsed()) return cmd_solve(in, m, n, max_solutions, max_expansions);
        if (sw->parsed()) return cmd_swap(in, k, event);
        if (bo->parsed()) return cmd_bounds(n, m, k, alpha, beta, static_cast<bool>(*oa));
        if (reg->parsed()) return cmd_region(config_path, out_csv, out_svg, svg_measure, threads);
        if (orc->parsed()) return cmd_oracle(n, m, k, instances, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
