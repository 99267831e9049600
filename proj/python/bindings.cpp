// Python surface: thin converters around the C++ core. Sequences cross the
// boundary as '0'/'1' strings, k-mer sets as lists of strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krec/krec.hpp"

namespace py = pybind11;
using namespace krec;

namespace {

SourceSet to_sources(const std::vector<std::string>& seqs) {
    std::vector<BitSequence> v;
    v.reserve(seqs.size());
    for (const auto& s : seqs) v.push_back(BitSequence::from_string(s));
    return SourceSet(std::move(v));
}

std::vector<std::string> from_sources(const SourceSet& x) {
    std::vector<std::string> v;
    for (const auto& s : x.sources()) v.push_back(s.to_string());
    return v;
}

KmerSet to_kmers(const std::vector<std::string>& words) {
    if (words.empty()) throw std::invalid_argument("empty k-mer list");
    std::vector<std::uint64_t> vals;
    for (const auto& w : words) {
        if (w.size() != words[0].size())
            throw std::invalid_argument("mixed k-mer lengths");
        vals.push_back(word_from_string(w));
    }
    return KmerSet(static_cast<unsigned>(words[0].size()) - 1, std::move(vals));
}

std::vector<std::string> from_kmers(const KmerSet& y) {
    std::vector<std::string> v;
    for (std::uint64_t w : y.values()) v.push_back(word_to_string(w, y.k() + 1));
    return v;
}

EventKind kind_from(const std::string& s) {
    if (s.size() == 1) switch (s[0]) {
            case 'A': return EventKind::A;
            case 'B': return EventKind::B;
            case 'C': return EventKind::C;
            case 'D': return EventKind::D;
            case 'H': return EventKind::H;
        }
    throw std::invalid_argument("event kind must be one of A B C D H");
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "reconstruction limits for sequence multisets from k-mer unions";

    py::register_exception<StructureViolation>(mod, "StructureViolation");

    py::class_<Params>(mod, "Params")
        .def_readonly("n", &Params::n)
        .def_readonly("m", &Params::m)
        .def_readonly("k", &Params::k)
        .def_property_readonly("alpha",
                               [](const Params& p) { return p.alpha; })
        .def_property_readonly("beta", [](const Params& p) { return p.beta; })
        .def("__repr__", [](const Params& p) {
            return "Params(n=" + std::to_string(p.n) + ", m=" + std::to_string(p.m) +
                   ", k=" + std::to_string(p.k) + ")";
        });

    py::class_<EventWitness>(mod, "EventWitness")
        .def_property_readonly(
            "kind", [](const EventWitness& w) { return std::string(1, event_letter(w.kind)); })
        .def_readonly("i", &EventWitness::i)
        .def_readonly("j", &EventWitness::j)
        .def_readonly("l", &EventWitness::l)
        .def_readonly("a", &EventWitness::a)
        .def_readonly("b", &EventWitness::b)
        .def_readonly("c", &EventWitness::c)
        .def_readonly("d", &EventWitness::d)
        .def("to_json", &EventWitness::to_json)
        .def("__repr__", &EventWitness::to_json);

    mod.def("make_params", &make_params, py::arg("n"), py::arg("m"), py::arg("k"),
            "validate explicit instance dimensions");
    mod.def("derive_params", &derive_params, py::arg("n"), py::arg("alpha"),
            py::arg("beta"), "m = max(1, round(n^alpha)), k = round(beta*log2 n)");

    mod.def(
        "generate",
        [](const Params& p, std::uint64_t seed) {
            return from_sources(generate_sources(p, seed));
        },
        py::arg("params"), py::arg("seed"), "draw m random n-bit sequences");

    mod.def(
        "extract_kmers",
        [](const std::vector<std::string>& seqs, unsigned k) {
            return from_kmers(extract_kmer_set(to_sources(seqs), k));
        },
        py::arg("seqs"), py::arg("k"), "sorted (k+1)-mer union of the sequences");

    mod.def(
        "dump_graph",
        [](const std::vector<std::string>& kmers, unsigned m) {
            const auto g = build_graph(to_kmers(kmers));
            if (m > 0) {
                try {
                    const auto lab = label_multiplicities(g, m);
                    return dump_graph(g, &lab.edge_count);
                } catch (const StructureViolation&) {
                }
            }
            return dump_graph(g);
        },
        py::arg("kmers"), py::arg("m") = 0,
        "edge listing; multiplicities labeled when inferable for m sequences");

    mod.def(
        "label_multiplicities",
        [](const std::vector<std::string>& kmers, unsigned m) {
            const auto y = to_kmers(kmers);
            const auto g = build_graph(y);
            const auto lab = label_multiplicities(g, m);
            py::dict d;
            for (std::size_t v = 0; v < g.nodes.size(); ++v)
                d[py::str(word_to_string(g.nodes[v], g.k))] = lab.mu.node_mu[v];
            return d;
        },
        py::arg("kmers"), py::arg("m"), "inferred node multiplicities");

    mod.def(
        "true_multiplicities",
        [](const std::vector<std::string>& seqs, unsigned k) {
            const auto x = to_sources(seqs);
            const auto g = build_graph(extract_kmer_set(x, k));
            const auto mu = true_multiplicities(x, g, k);
            py::dict d;
            for (std::size_t v = 0; v < g.nodes.size(); ++v)
                d[py::str(word_to_string(g.nodes[v], g.k))] = mu.node_mu[v];
            return d;
        },
        py::arg("seqs"), py::arg("k"), "actual window counts per node");

    mod.def(
        "detect",
        [](const std::vector<std::string>& seqs, unsigned k, const std::string& kind)
            -> std::optional<EventWitness> {
            return detect(kind_from(kind), to_sources(seqs), k);
        },
        py::arg("seqs"), py::arg("k"), py::arg("kind"),
        "smallest witness of the given event kind, or None");

    mod.def(
        "count_event",
        [](const std::vector<std::string>& seqs, unsigned k, const std::string& kind) {
            const auto x = to_sources(seqs);
            switch (kind_from(kind)) {
                case EventKind::A: return count_A(x, k);
                case EventKind::B: return count_B(x, k);
                case EventKind::C: return count_C(x, k);
                case EventKind::D: return count_D(x, k);
                case EventKind::H: return count_H(x, k);
            }
            return std::uint64_t{0};
        },
        py::arg("seqs"), py::arg("k"), py::arg("kind"));

    mod.def(
        "swap",
        [](const std::vector<std::string>& seqs, const EventWitness& w) {
            const auto x = to_sources(seqs);
            if (w.kind == EventKind::D) return from_sources(construct_swap_D(x, w));
            if (w.kind == EventKind::H) return from_sources(construct_swap_H(x, w));
            throw std::invalid_argument("swap needs a D or H witness");
        },
        py::arg("seqs"), py::arg("witness"), "apply the tail or segment exchange");

    mod.def(
        "verify_equivalent",
        [](const std::vector<std::string>& a, const std::vector<std::string>& b,
           unsigned k) { return verify_equivalent(to_sources(a), to_sources(b), k); },
        py::arg("a"), py::arg("b"), py::arg("k"));

    mod.def(
        "v_statistic",
        [](const std::vector<std::string>& seqs, unsigned k) {
            return v_statistic(to_sources(seqs), k);
        },
        py::arg("seqs"), py::arg("k"), "aligned cross-repeat count");
    mod.def(
        "u_statistic",
        [](const std::vector<std::string>& seqs, unsigned k) {
            return u_statistic(to_sources(seqs), k);
        },
        py::arg("seqs"), py::arg("k"), "equal-gap double-repeat count");

    mod.def(
        "enumerate_reconstructions",
        [](const std::vector<std::string>& kmers, unsigned m, unsigned n,
           std::uint64_t max_solutions, std::uint64_t max_expansions) {
            const auto r = enumerate_reconstructions(to_kmers(kmers), m, n,
                                                     Budget{max_solutions, max_expansions});
            std::vector<std::vector<std::string>> sols;
            for (const auto& s : r.solutions) sols.push_back(from_sources(s));
            return py::make_tuple(sols, r.exhausted, r.expansions);
        },
        py::arg("kmers"), py::arg("m"), py::arg("n"), py::arg("max_solutions") = 2,
        py::arg("max_expansions") = 1'000'000,
        "-> (solutions, exhausted, expansions)");

    mod.def(
        "brute_force_oracle",
        [](const std::vector<std::string>& kmers, unsigned m, unsigned n) {
            std::vector<std::vector<std::string>> sols;
            for (const auto& s : brute_force_oracle(to_kmers(kmers), m, n))
                sols.push_back(from_sources(s));
            return sols;
        },
        py::arg("kmers"), py::arg("m"), py::arg("n"),
        "reference solver, m*n <= 24");

    mod.def(
        "is_unique",
        [](const std::vector<std::string>& seqs, unsigned k,
           std::uint64_t max_expansions) {
            return std::string(uniqueness_name(
                is_unique(to_sources(seqs), k, Budget{2, max_expansions})));
        },
        py::arg("seqs"), py::arg("k"), py::arg("max_expansions") = 1'000'000,
        "'unique', 'ambiguous' or 'unknown'");

    mod.def(
        "count_shared_subpaths",
        [](const std::vector<std::string>& a, const std::vector<std::string>& b,
           unsigned k) {
            return count_maximal_shared_subpaths(
                difference_graph(to_sources(a), to_sources(b), k));
        },
        py::arg("a"), py::arg("b"), py::arg("k"),
        "maximal shared runs in the difference graph");

    mod.def(
        "classify_region",
        [](double alpha, double beta) {
            const auto rc = classify_region(alpha, beta);
            return py::make_tuple(verdict_name(rc.verdict), bound_name(rc.binding));
        },
        py::arg("alpha"), py::arg("beta"), "-> (verdict, binding constraint)");

    mod.def(
        "event_bounds",
        [](const Params& p) {
            const auto b = event_bounds(p);
            py::dict d;
            d["A"] = b.a;
            d["B"] = b.b;
            d["C"] = b.c;
            d["D"] = b.d;
            return d;
        },
        py::arg("params"));

    mod.def("repeat_free_bound", &repeat_free_bound, py::arg("params"));

    auto moments_dict = [](const MomentReport& r) {
        py::dict d;
        d["e_first"] = r.e_first;
        d["e_second_bound"] = r.e_second_bound;
        d["pz_lower"] = r.pz_lower;
        return d;
    };
    mod.def(
        "moments_v", [moments_dict](const Params& p) { return moments_dict(moments_V(p)); },
        py::arg("params"));
    mod.def(
        "moments_u", [moments_dict](const Params& p) { return moments_dict(moments_U(p)); },
        py::arg("params"));

    mod.def(
        "run_grid_csv",
        [](const std::string& config_json, unsigned threads) {
            return emit_csv(run_grid(ExperimentConfig::from_json(config_json), threads));
        },
        py::arg("config_json"), py::arg("threads") = 1,
        "run an experiment grid, return the CSV text");

    mod.def(
        "run_grid_svg",
        [](const std::string& config_json, const std::string& label, unsigned threads) {
            return emit_svg_heatmap(
                run_grid(ExperimentConfig::from_json(config_json), threads), label);
        },
        py::arg("config_json"), py::arg("label") = "nonunique", py::arg("threads") = 1,
        "run an experiment grid, return the SVG heatmap");

    mod.attr("PZ_LIMIT_V") = kPzLimitV;
    mod.attr("PZ_LIMIT_U") = kPzLimitU;
    mod.attr("__version__") = "1.0.0";
}
