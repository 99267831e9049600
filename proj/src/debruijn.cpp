#include "krec/debruijn.hpp"

#include <algorithm>
#include <deque>

namespace krec {

std::size_t DeBruijnGraph::node_index(std::uint64_t v) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v)
        throw std::invalid_argument("DeBruijnGraph: unknown node");
    return static_cast<std::size_t>(it - nodes.begin());
}

DeBruijnGraph build_graph(const KmerSet& y) {
    DeBruijnGraph g;
    g.k = y.k();
    const std::uint64_t mask = (1ULL << g.k) - 1;

    g.nodes.reserve(y.size() * 2);
    for (std::uint64_t e : y.values()) {
        g.nodes.push_back(e >> 1);
        g.nodes.push_back(e & mask);
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());

    g.edges.assign(y.values().begin(), y.values().end());
    g.out.resize(g.nodes.size());
    g.in.resize(g.nodes.size());
    g.edge_from.resize(g.edges.size());
    g.edge_to.resize(g.edges.size());
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        const auto u = static_cast<std::uint32_t>(g.node_index(g.edges[e] >> 1));
        const auto v = static_cast<std::uint32_t>(g.node_index(g.edges[e] & mask));
        g.edge_from[e] = u;
        g.edge_to[e] = v;
        g.out[u].push_back(e);
        g.in[v].push_back(e);
    }
    return g;
}

namespace {

// Unified constraint store for the labeling fixpoint: node mus and edge
// counts are all variables over {unset, 1, 2}.
struct Vars {
    std::vector<std::uint8_t> node, edge;
    std::deque<std::pair<bool, std::uint32_t>> work; // (is_node, index)

    bool assign(std::vector<std::uint8_t>& slot, bool is_node, std::uint32_t i,
                std::uint8_t v) {
        if (slot[i] == v) return false;
        if (slot[i] != 0) throw StructureViolation("labeling: contradiction");
        slot[i] = v;
        work.emplace_back(is_node, i);
        return true;
    }
    void set_node(std::uint32_t i, std::uint8_t v) { assign(node, true, i, v); }
    void set_edge(std::uint32_t i, std::uint8_t v) { assign(edge, false, i, v); }
};

} // namespace

LabelingResult label_multiplicities(const DeBruijnGraph& g, unsigned m) {
    const std::size_t nn = g.nodes.size();
    if (g.out.size() != nn || g.in.size() != nn)
        throw std::invalid_argument("label_multiplicities: malformed graph");

    for (std::size_t v = 0; v < nn; ++v) {
        if (g.out[v].size() > 2 || g.in[v].size() > 2)
            throw StructureViolation("labeling: node degree exceeds 2");
    }
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        if (g.edge_from[e] == g.edge_to[e])
            throw StructureViolation("labeling: self-loop");
        for (std::uint32_t r : g.out[g.edge_to[e]])
            if (g.edge_to[r] == g.edge_from[e])
                throw StructureViolation("labeling: 2-cycle");
    }

    std::size_t starts = 0, ends = 0;
    for (std::size_t v = 0; v < nn; ++v) {
        starts += g.in[v].empty();
        ends += g.out[v].empty();
    }
    if (starts != m || ends != m)
        throw StructureViolation("labeling: start/end node count differs from m");

    Vars vars;
    vars.node.assign(nn, 0);
    vars.edge.assign(g.edges.size(), 0);

    auto seed_node = [&](std::uint32_t v) {
        if (g.in[v].empty() || g.out[v].empty()) vars.set_node(v, 1);
        if (g.in[v].size() == 2) {
            vars.set_node(v, 2);
            for (std::uint32_t e : g.in[v]) vars.set_edge(e, 1);
        }
        if (g.out[v].size() == 2) {
            vars.set_node(v, 2);
            for (std::uint32_t e : g.out[v]) vars.set_edge(e, 1);
        }
    };
    for (std::uint32_t v = 0; v < nn; ++v) seed_node(v);

    // Equality constraints: a node with a single in-edge (resp. out-edge)
    // has the same multiplicity as that edge. Propagate to fixpoint.
    auto touch_node = [&](std::uint32_t v) {
        if (vars.node[v] == 0) return;
        if (g.in[v].size() == 1) vars.set_edge(g.in[v][0], vars.node[v]);
        if (g.out[v].size() == 1) vars.set_edge(g.out[v][0], vars.node[v]);
    };
    auto touch_edge = [&](std::uint32_t e) {
        if (vars.edge[e] == 0) return;
        const std::uint32_t u = g.edge_from[e], v = g.edge_to[e];
        if (g.out[u].size() == 1) vars.set_node(u, vars.edge[e]);
        if (g.in[v].size() == 1) vars.set_node(v, vars.edge[e]);
    };

    while (!vars.work.empty()) {
        auto [is_node, i] = vars.work.front();
        vars.work.pop_front();
        if (is_node)
            touch_node(i);
        else
            touch_edge(i);
    }

    for (std::uint8_t v : vars.node)
        if (v == 0) throw StructureViolation("labeling: undetermined node");
    for (std::uint8_t e : vars.edge)
        if (e == 0) throw StructureViolation("labeling: undetermined edge");

    LabelingResult r;
    r.mu.node_mu.assign(vars.node.begin(), vars.node.end());
    r.edge_count.assign(vars.edge.begin(), vars.edge.end());
    return r;
}

MultiplicityMap true_multiplicities(const SourceSet& x, const DeBruijnGraph& g, unsigned k) {
    MultiplicityMap m;
    m.node_mu.assign(g.nodes.size(), 0);
    for (const auto& s : x.sources())
        for (unsigned a = 1; a + k - 1 <= x.n(); ++a)
            ++m.node_mu[g.node_index(s.kmer_at(a, k))];
    return m;
}

std::string dump_graph(const DeBruijnGraph& g,
                       const std::vector<std::uint32_t>* edge_counts) {
    std::string out;
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        out += word_to_string(g.nodes[g.edge_from[e]], g.k);
        out += " -> ";
        out += word_to_string(g.nodes[g.edge_to[e]], g.k);
        out += " [mult=";
        if (edge_counts)
            out += std::to_string((*edge_counts)[e]);
        else
            out += '?';
        out += "]\n";
    }
    return out;
}

} // namespace krec
