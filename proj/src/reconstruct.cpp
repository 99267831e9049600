#include "krec/reconstruct.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "krec/ambiguity.hpp"
#include "krec/events.hpp"
#include "krec/pairing.hpp"

namespace krec {

namespace {

// Per-node achievable-walk-length table. A node that can reach a cycle gets
// every length (over-approximation, only ever used to rule branches out);
// the rest form a DAG and get exact length sets by a post-order sweep.
class LengthTable {
public:
    LengthTable(const DeBruijnGraph& g, unsigned max_len) : words_((max_len + 64) / 64) {
        const std::size_t nn = g.nodes.size();
        bits_.assign(nn * words_, 0);

        std::vector<std::uint8_t> reach(nn, 0); // can reach a cycle
        mark_cycle_reaching(g, reach);

        // post-order over the acyclic part; successors of an acyclic node
        // are acyclic too, so the sweep below sees them first
        std::vector<std::uint8_t> state(nn, 0);
        std::vector<std::uint32_t> stack;
        for (std::uint32_t root = 0; root < nn; ++root) {
            if (state[root] || reach[root]) continue;
            stack.push_back(root);
            while (!stack.empty()) {
                const std::uint32_t v = stack.back();
                if (state[v] == 0) {
                    state[v] = 1;
                    for (std::uint32_t e : g.out[v]) {
                        const std::uint32_t w = g.edge_to[e];
                        if (!state[w]) stack.push_back(w);
                    }
                } else {
                    stack.pop_back();
                    if (state[v] == 2) continue;
                    state[v] = 2;
                    std::uint64_t* row = &bits_[std::size_t(v) * words_];
                    row[0] |= 1; // the empty walk
                    for (std::uint32_t e : g.out[v])
                        or_shifted(row, &bits_[std::size_t(g.edge_to[e]) * words_]);
                }
            }
        }
        for (std::uint32_t v = 0; v < nn; ++v)
            if (reach[v])
                std::fill_n(&bits_[std::size_t(v) * words_], words_, ~0ULL);
    }

    bool ok(std::uint32_t v, unsigned len) const {
        return (bits_[std::size_t(v) * words_ + len / 64] >> (len % 64)) & 1;
    }

private:
    void or_shifted(std::uint64_t* dst, const std::uint64_t* src) {
        for (unsigned w = words_; w-- > 0;) {
            std::uint64_t v = src[w] << 1;
            if (w > 0) v |= src[w - 1] >> 63;
            dst[w] |= v;
        }
    }

    // Iterative Tarjan; a node reaches a cycle iff it reaches a node on one.
    void mark_cycle_reaching(const DeBruijnGraph& g, std::vector<std::uint8_t>& reach) {
        const std::size_t nn = g.nodes.size();
        std::vector<std::uint32_t> low(nn, 0), idx(nn, 0), comp(nn, 0);
        std::vector<std::uint8_t> on_stack(nn, 0);
        std::vector<std::uint32_t> scc_stack;
        std::uint32_t counter = 1, ncomp = 0;
        std::vector<std::uint32_t> comp_size;

        struct Frame {
            std::uint32_t v;
            std::size_t next_edge;
        };
        std::vector<Frame> frames;
        for (std::uint32_t root = 0; root < nn; ++root) {
            if (idx[root]) continue;
            frames.push_back({root, 0});
            idx[root] = low[root] = counter++;
            scc_stack.push_back(root);
            on_stack[root] = 1;
            while (!frames.empty()) {
                Frame& f = frames.back();
                if (f.next_edge < g.out[f.v].size()) {
                    const std::uint32_t w = g.edge_to[g.out[f.v][f.next_edge++]];
                    if (!idx[w]) {
                        frames.push_back({w, 0});
                        idx[w] = low[w] = counter++;
                        scc_stack.push_back(w);
                        on_stack[w] = 1;
                    } else if (on_stack[w]) {
                        low[f.v] = std::min(low[f.v], idx[w]);
                    }
                } else {
                    const std::uint32_t v = f.v;
                    frames.pop_back();
                    if (!frames.empty())
                        low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                    if (low[v] == idx[v]) {
                        std::uint32_t size = 0;
                        std::uint32_t w;
                        do {
                            w = scc_stack.back();
                            scc_stack.pop_back();
                            on_stack[w] = 0;
                            comp[w] = ncomp;
                            ++size;
                        } while (w != v);
                        comp_size.push_back(size);
                        ++ncomp;
                    }
                }
            }
        }

        std::vector<std::uint8_t> cyclic(nn, 0);
        for (std::uint32_t v = 0; v < nn; ++v) {
            if (comp_size[comp[v]] > 1) cyclic[v] = 1;
            for (std::uint32_t e : g.out[v])
                if (g.edge_to[e] == v) cyclic[v] = 1; // self-loop
        }
        // backwards BFS from cyclic nodes
        std::vector<std::uint32_t> queue;
        for (std::uint32_t v = 0; v < nn; ++v)
            if (cyclic[v]) {
                reach[v] = 1;
                queue.push_back(v);
            }
        while (!queue.empty()) {
            const std::uint32_t v = queue.back();
            queue.pop_back();
            for (std::uint32_t e : g.in[v]) {
                const std::uint32_t u = g.edge_from[e];
                if (!reach[u]) {
                    reach[u] = 1;
                    queue.push_back(u);
                }
            }
        }
    }

    unsigned words_;
    std::vector<std::uint64_t> bits_;
};

struct Walk {
    std::uint32_t start = 0;
    std::vector<std::uint8_t> bits;
};

class Solver {
public:
    Solver(const DeBruijnGraph& g, unsigned m, unsigned n, const Budget& budget)
        : g_(g),
          m_(m),
          len_(n - g.k),
          max_solutions_(budget.max_solutions),
          max_expansions_(budget.max_expansions),
          lengths_(g, n - g.k) {
        cover_.assign(g_.edges.size(), 0);
        uncovered_ = g_.edges.size();
        is_start_.resize(g_.nodes.size());
        is_end_.resize(g_.nodes.size());
        uncovered_start_out_ = 0;
        uncovered_end_in_ = 0;
        for (std::uint32_t v = 0; v < g_.nodes.size(); ++v) {
            is_start_[v] = g_.in[v].empty();
            if (is_start_[v]) uncovered_start_out_ += g_.out[v].size();
            is_end_[v] = g_.out[v].empty();
            if (is_end_[v]) uncovered_end_in_ += g_.in[v].size();
        }
        walks_.resize(m_);
        for (auto& w : walks_) w.bits.reserve(len_);
    }

    ReconstructionResult run() {
        ReconstructionResult r;
        start_walk(0);
        r.solutions = std::move(solutions_);
        r.exhausted = !truncated_;
        r.expansions = expansions_;
        return r;
    }

private:
    bool done() const {
        return truncated_ || solutions_.size() >= max_solutions_;
    }

    void start_walk(unsigned t) {
        if (done()) return;
        if (uncovered_ > std::uint64_t(m_ - t) * len_) return;
        // every in-degree-0 node's uncovered out-edges need a walk starting
        // there, and every out-degree-0 node's uncovered in-edges a walk
        // ending there; only the m-t walks not yet placed can provide either
        if (uncovered_start_out_ > m_ - t) return;
        if (uncovered_end_in_ > m_ - t) return;
        const std::uint32_t prev = t > 0 ? walks_[t - 1].start : 0;
        for (std::uint32_t v = 0; v < g_.nodes.size(); ++v) {
            bool tight = false;
            if (t > 0) {
                if (g_.nodes[v] < g_.nodes[prev]) continue;
                tight = g_.nodes[v] == g_.nodes[prev];
            }
            if (!lengths_.ok(v, len_)) continue;
            walks_[t].start = v;
            walks_[t].bits.clear();
            step(t, v, 0, tight);
            if (done()) return;
        }
    }

    void step(unsigned t, std::uint32_t v, unsigned s, bool tight) {
        if (expansions_ == max_expansions_) {
            truncated_ = true;
            return;
        }
        ++expansions_;
        if (s == len_) {
            // a dead-end edge is only ever a walk's final step, so this walk
            // ending elsewhere must leave enough walks for the dead ends left
            if (uncovered_end_in_ > m_ - t - 1) return;
            if (t + 1 == m_) {
                if (uncovered_ == 0) record();
            } else {
                start_walk(t + 1);
            }
            return;
        }
        for (std::uint32_t e : g_.out[v]) { // bit 0 before bit 1: edges sorted
            const std::uint8_t b = g_.edges[e] & 1;
            bool ntight = tight;
            if (tight) {
                const std::uint8_t pb = walks_[t - 1].bits[s];
                if (b < pb) continue;
                if (b > pb) ntight = false;
            }
            const std::uint32_t w = g_.edge_to[e];
            const unsigned need = len_ - s - 1;
            if (!lengths_.ok(w, need)) continue;

            if (cover_[e]++ == 0) {
                --uncovered_;
                if (is_start_[g_.edge_from[e]]) --uncovered_start_out_;
                if (is_end_[g_.edge_to[e]]) --uncovered_end_in_;
            }
            const bool feasible =
                uncovered_ <= need + std::uint64_t(m_ - t - 1) * len_ &&
                uncovered_start_out_ <= m_ - t - 1;
            if (feasible) {
                walks_[t].bits.push_back(b);
                step(t, w, s + 1, ntight);
                walks_[t].bits.pop_back();
            }
            if (--cover_[e] == 0) {
                ++uncovered_;
                if (is_start_[g_.edge_from[e]]) ++uncovered_start_out_;
                if (is_end_[g_.edge_to[e]]) ++uncovered_end_in_;
            }
            if (done()) return;
        }
    }

    void record() {
        std::vector<BitSequence> seqs;
        seqs.reserve(m_);
        for (const Walk& w : walks_) {
            BitSequence s(0);
            const std::uint64_t sv = g_.nodes[w.start];
            for (unsigned b = g_.k; b-- > 0;) s.append_bit((sv >> b) & 1);
            for (std::uint8_t b : w.bits) s.append_bit(b);
            seqs.push_back(std::move(s));
        }
        solutions_.emplace_back(std::move(seqs));
        // stopping at the solution cap abandons the rest of the sweep
        if (solutions_.size() >= max_solutions_) truncated_ = true;
    }

    const DeBruijnGraph& g_;
    unsigned m_, len_;
    std::uint64_t max_solutions_, max_expansions_;
    LengthTable lengths_;

    std::vector<std::uint32_t> cover_;
    std::uint64_t uncovered_ = 0;
    std::vector<std::uint8_t> is_start_;
    std::vector<std::uint8_t> is_end_;
    std::uint64_t uncovered_start_out_ = 0;
    std::uint64_t uncovered_end_in_ = 0;

    std::vector<Walk> walks_;
    std::vector<SourceSet> solutions_;
    std::uint64_t expansions_ = 0;
    bool truncated_ = false;
};

} // namespace

ReconstructionResult enumerate_reconstructions(const KmerSet& y, unsigned m,
                                               unsigned n, const Budget& budget) {
    if (m < 1) throw std::invalid_argument("enumerate: m must be >= 1");
    if (n < y.k() + 1) throw std::invalid_argument("enumerate: n must be >= k+1");
    if (y.size() == 0) throw std::invalid_argument("enumerate: empty k-mer set");
    const DeBruijnGraph g = build_graph(y);
    return Solver(g, m, n, budget).run();
}

const char* uniqueness_name(Uniqueness u) {
    switch (u) {
        case Uniqueness::Unique: return "unique";
        case Uniqueness::Ambiguous: return "ambiguous";
        case Uniqueness::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// Looks for a swap that provably changes the source multiset. Trying every
// aligned match and every equal-gap pair is overkill; a few hundred
// candidates either certify or we hand over to the solver.
bool certificate_swap(const SourceSet& x, unsigned k) {
    constexpr unsigned kMaxCandidates = 1024;
    const unsigned np = x.n() - k + 1;
    const unsigned m = static_cast<unsigned>(x.size());
    unsigned tried = 0;

    auto certifies = [&](const SourceSet& alt) {
        if (!alt.multiset_equal(x)) {
            if (!verify_equivalent(x, alt, k))
                throw std::logic_error("swap certificate broke k-mer union");
            return true;
        }
        return false;
    };

    for (unsigned i = 1; i <= m && tried < kMaxCandidates; ++i)
        for (unsigned j = i + 1; j <= m && tried < kMaxCandidates; ++j)
            for (unsigned a = 1; a <= np && tried < kMaxCandidates; ++a) {
                if (x.source(i).kmer_at(a, k) != x.source(j).kmer_at(a, k)) continue;
                ++tried;
                EventWitness w{EventKind::D, i, j, 0, a, 0, 0, 0};
                if (certifies(construct_swap_D(x, w))) return true;
            }

    tried = 0;
    for (unsigned i = 1; i <= m && tried < kMaxCandidates; ++i)
        for (unsigned j = i + 1; j <= m && tried < kMaxCandidates; ++j) {
            std::unordered_map<std::uint64_t, std::vector<unsigned>> pos_j;
            pos_j.reserve(np);
            for (unsigned c = 1; c <= np; ++c)
                pos_j[x.source(j).kmer_at(c, k)].push_back(c);
            std::vector<std::pair<long, std::pair<unsigned, unsigned>>> matches;
            for (unsigned a = 1; a <= np; ++a) {
                auto it = pos_j.find(x.source(i).kmer_at(a, k));
                if (it == pos_j.end()) continue;
                for (unsigned c : it->second)
                    matches.push_back({static_cast<long>(c) - a, {a, c}});
            }
            std::sort(matches.begin(), matches.end());
            for (std::size_t p = 0; p + 1 < matches.size() && tried < kMaxCandidates; ++p)
                for (std::size_t q = p + 1;
                     q < matches.size() && matches[q].first == matches[p].first &&
                     tried < kMaxCandidates;
                     ++q) {
                    ++tried;
                    EventWitness w{EventKind::H,        i, j, 0,
                                   matches[p].second.first, matches[q].second.first,
                                   matches[p].second.second, 0};
                    if (certifies(construct_swap_H(x, w))) return true;
                }
        }
    return false;
}

} // namespace

Uniqueness is_unique(const SourceSet& x, unsigned k, const Budget& budget) {
    if (k + 1 > x.n()) throw std::invalid_argument("is_unique: k+1 exceeds n");
    if (certificate_swap(x, k)) return Uniqueness::Ambiguous;

    Budget b = budget;
    b.max_solutions = 2;

    // anchored pairing first: it decides most forced instances within budget,
    // in either direction. Only a full sweep with rigid traversal counts
    // certifies uniqueness; anything else falls through to the walk sweep.
    const PairingResult pr = enumerate_by_pairing(x, k, b);
    if (pr.starts_forced) {
        if (pr.solutions.size() >= 2) return Uniqueness::Ambiguous;
        if (pr.exhausted) {
            if (pr.solutions.empty() || !pr.solutions.front().multiset_equal(x))
                throw std::logic_error("is_unique: source set not among pairings");
            if (pr.flow_forced) return Uniqueness::Unique;
        }
    }

    const KmerSet y = extract_kmer_set(x, k);
    const ReconstructionResult r =
        enumerate_reconstructions(y, static_cast<unsigned>(x.size()), x.n(), b);
    if (r.solutions.size() >= 2) return Uniqueness::Ambiguous;
    if (r.exhausted) {
        if (r.solutions.empty())
            throw std::logic_error("is_unique: source set not among reconstructions");
        return Uniqueness::Unique;
    }
    return Uniqueness::Unknown;
}

std::vector<SourceSet> brute_force_oracle(const KmerSet& y, unsigned m, unsigned n) {
    if (m < 1) throw std::invalid_argument("oracle: m must be >= 1");
    if (std::uint64_t(m) * n > 24)
        throw std::invalid_argument("oracle: m*n must be <= 24");
    const unsigned k = y.k();
    if (n < k + 1) throw std::invalid_argument("oracle: n must be >= k+1");

    const unsigned ne = static_cast<unsigned>(y.size());
    if (ne > 32) throw std::invalid_argument("oracle: k-mer set too large");
    const std::uint32_t full = ne == 32 ? ~0u : (1u << ne) - 1;
    const std::uint64_t wmask = (1ULL << (k + 1)) - 1;

    // candidate strings and which edges of y they cover
    std::vector<std::uint64_t> strs;
    std::vector<std::uint32_t> masks;
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
        std::uint32_t mask = 0;
        bool ok = true;
        for (unsigned t = 0; t + k + 1 <= n && ok; ++t) {
            const std::uint64_t w = (v >> (n - (k + 1) - t)) & wmask;
            const auto& vals = y.values();
            const auto it = std::lower_bound(vals.begin(), vals.end(), w);
            if (it == vals.end() || *it != w)
                ok = false;
            else
                mask |= 1u << (it - vals.begin());
        }
        if (ok) {
            strs.push_back(v);
            masks.push_back(mask);
        }
    }

    std::vector<std::uint32_t> suffix_or(strs.size() + 1, 0);
    for (std::size_t i = strs.size(); i-- > 0;)
        suffix_or[i] = suffix_or[i + 1] | masks[i];

    std::vector<SourceSet> solutions;
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t from, std::uint32_t acc) -> void {
        if (chosen.size() == m) {
            if (acc == full) {
                std::vector<BitSequence> seqs;
                for (std::size_t idx : chosen)
                    seqs.push_back(BitSequence::from_string(word_to_string(strs[idx], n)));
                solutions.emplace_back(std::move(seqs));
            }
            return;
        }
        if ((acc | suffix_or[from]) != full) return;
        for (std::size_t i = from; i < strs.size(); ++i) {
            chosen.push_back(i);
            self(self, i, acc | masks[i]);
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0);
    return solutions;
}

DifferenceGraph difference_graph(const SourceSet& x, const SourceSet& xt, unsigned k) {
    if (x.n() != xt.n() || x.size() != xt.size())
        throw std::invalid_argument("difference_graph: shape mismatch");
    if (k + 1 > x.n()) throw std::invalid_argument("difference_graph: k+1 exceeds n");

    // two-pointer multiset difference over the sorted sequences
    const std::vector<BitSequence> xs = x.sorted(), ts = xt.sorted();
    std::vector<BitSequence> only_x, only_t;
    std::size_t i = 0, j = 0;
    while (i < xs.size() || j < ts.size()) {
        if (i == xs.size())
            only_t.push_back(ts[j++]);
        else if (j == ts.size())
            only_x.push_back(xs[i++]);
        else if (xs[i] == ts[j]) {
            ++i;
            ++j;
        } else if (xs[i] < ts[j])
            only_x.push_back(xs[i++]);
        else
            only_t.push_back(ts[j++]);
    }

    DifferenceGraph dg;
    dg.c = static_cast<unsigned>(only_x.size());
    if (only_x.empty()) {
        dg.graph.k = k;
        return dg;
    }

    auto edge_multiset = [&](const std::vector<BitSequence>& seqs) {
        std::vector<std::uint64_t> v;
        for (const auto& s : seqs)
            for (unsigned a = 1; a + k <= s.length(); ++a)
                v.push_back(s.kmer_at(a, k + 1));
        std::sort(v.begin(), v.end());
        return v;
    };
    const std::vector<std::uint64_t> ex = edge_multiset(only_x);
    if (ex != edge_multiset(only_t))
        throw StructureViolation("difference_graph: sides have different edge multisets");

    std::vector<std::uint64_t> unique_edges = ex;
    unique_edges.erase(std::unique(unique_edges.begin(), unique_edges.end()),
                       unique_edges.end());
    dg.graph = build_graph(KmerSet(k, std::move(unique_edges)));

    auto node_counts = [&](const std::vector<BitSequence>& seqs) {
        std::vector<std::uint32_t> mu(dg.graph.nodes.size(), 0);
        for (const auto& s : seqs)
            for (unsigned a = 1; a + k - 1 <= s.length(); ++a)
                ++mu[dg.graph.node_index(s.kmer_at(a, k))];
        return mu;
    };
    dg.mu = node_counts(only_x);
    if (dg.mu != node_counts(only_t))
        throw StructureViolation("difference_graph: sides have different node counts");

    dg.edge_count.assign(dg.graph.edges.size(), 0);
    for (std::uint64_t e : ex) {
        const auto it =
            std::lower_bound(dg.graph.edges.begin(), dg.graph.edges.end(), e);
        ++dg.edge_count[it - dg.graph.edges.begin()];
    }
    return dg;
}

unsigned count_maximal_shared_subpaths(const DifferenceGraph& dg) {
    unsigned shared_nodes = 0, shared_links = 0;
    for (std::uint32_t v = 0; v < dg.graph.nodes.size(); ++v)
        shared_nodes += dg.mu[v] >= 2;
    for (std::uint32_t e = 0; e < dg.graph.edges.size(); ++e)
        shared_links += dg.edge_count[e] >= 2;
    return shared_nodes >= shared_links ? shared_nodes - shared_links : 0;
}

} // namespace krec
