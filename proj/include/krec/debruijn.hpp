#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "krec/core.hpp"

namespace krec {

// De Bruijn graph of a (k+1)-mer set: nodes are the k-long prefixes and
// suffixes, one edge per (k+1)-mer from its prefix to its suffix. Over the
// binary alphabet every node has at most two in- and two out-edges; the
// labeling routine still validates degrees so that hand-built graphs are
// checked too.
struct DeBruijnGraph {
    unsigned k = 0;
    std::vector<std::uint64_t> nodes;                // sorted, unique k-mers
    std::vector<std::uint64_t> edges;                // sorted, unique (k+1)-mers
    std::vector<std::uint32_t> edge_from, edge_to;   // node indices, per edge
    std::vector<std::vector<std::uint32_t>> out, in; // node index -> edge ids

    std::size_t node_index(std::uint64_t v) const;   // throws if absent
};

DeBruijnGraph build_graph(const KmerSet& y);

/// Node multiplicities, parallel to graph.nodes.
struct MultiplicityMap {
    std::vector<std::uint32_t> node_mu;
};

/// Multiplicities inferred from graph shape alone, plus per-edge traversal
/// counts. Valid when the instance is free of the A/B/C repeat events.
struct LabelingResult {
    MultiplicityMap mu;                  // values in {1,2}
    std::vector<std::uint32_t> edge_count; // values in {1,2}, parallel to edges
};

/// Infers how many of the m source walks pass through each node, using only
/// local degree constraints:
///   - in-degree 0 or out-degree 0  => mu = 1
///   - in-degree 2 (resp. out 2)    => mu = 2 and both edges carry count 1
///   - single in/out edge           => node mu equals that edge's count
/// Throws StructureViolation if the graph has a degree above 2, a self-loop
/// or a 2-cycle, does not have exactly m start and m end nodes, or if
/// propagation hits a contradiction or leaves anything undetermined.
LabelingResult label_multiplicities(const DeBruijnGraph& g, unsigned m);

/// Ground-truth multiplicities: number of windows x_i(a) equal to each node.
MultiplicityMap true_multiplicities(const SourceSet& x, const DeBruijnGraph& g, unsigned k);

/// One line per edge, in sorted edge order: "PREFIX -> SUFFIX [mult=c]".
/// With edge_counts == nullptr the multiplicity renders as "?".
std::string dump_graph(const DeBruijnGraph& g,
                       const std::vector<std::uint32_t>* edge_counts = nullptr);

} // namespace krec
