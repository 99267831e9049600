#include "krec/pairing.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace krec {

namespace {

struct Chain {
    int from = 0, to = 0;           // branch node ids
    int len = 0, mult = 0;          // edge count, traversal count
    std::vector<std::uint8_t> bits; // edge low bits along the chain
};

// Per branch node, the set of total chain-path lengths achievable from a
// start slot (forward table) or to an end slot (backward table), ignoring
// pass availability — a superset of what any partial assignment can still
// realize, so testing against it only ever rules branches out.
class ReachTable {
public:
    ReachTable() = default;
    ReachTable(std::size_t nodes, int max_len)
        : words_((max_len + 64) / 64),
          top_mask_((max_len + 1) % 64 ? (1ULL << ((max_len + 1) % 64)) - 1 : ~0ULL),
          bits_(nodes * words_, 0) {}

    bool enabled() const { return !bits_.empty(); }

    void set_zero(int v) { bits_[std::size_t(v) * words_] |= 1; }

    bool test(int v, int b) const {
        return (bits_[std::size_t(v) * words_ + b / 64] >> (b % 64)) & 1;
    }

    const std::uint64_t* row(int v) const { return &bits_[std::size_t(v) * words_]; }

    // dst |= src << s, truncated to max_len; reports whether dst grew
    bool or_shifted(int dst, int src, int s) {
        const std::uint64_t* a = &bits_[std::size_t(src) * words_];
        std::uint64_t* b = &bits_[std::size_t(dst) * words_];
        const unsigned q = unsigned(s) / 64, r = unsigned(s) % 64;
        bool grew = false;
        for (unsigned w = words_; w-- > q;) {
            std::uint64_t v = a[w - q] << r;
            if (r && w - q > 0) v |= a[w - q - 1] >> (64 - r);
            if (w == words_ - 1) v &= top_mask_;
            if (v & ~b[w]) {
                b[w] |= v;
                grew = true;
            }
        }
        return grew;
    }

private:
    unsigned words_ = 0;
    std::uint64_t top_mask_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct Structure {
    unsigned k = 0;
    int m = 0, len = 0;
    std::vector<std::uint64_t> node_word;  // sorted unique k-mers
    std::vector<Chain> chains;
    std::vector<int> cidx;                 // node id -> branch idx or -1
    std::vector<int> branch_node;          // branch idx -> node id
    std::vector<int> start_slots, end_slots, ext; // per branch idx
    std::vector<std::vector<int>> cin, cou;       // per branch idx: chain ids
    std::vector<std::vector<std::pair<int, int>>> ref_pairs; // x's own pairing
    ReachTable reach_start, reach_end;
    bool starts_forced = false;
    bool flow_forced = false;
};

Structure build_structure(const SourceSet& x, unsigned k) {
    Structure S;
    S.k = k;
    S.m = static_cast<int>(x.size());
    const unsigned n = x.n();
    S.len = static_cast<int>(n - k);

    // per-edge traversal counts: how often each (k+1)-mer occurs as a window
    std::map<std::uint64_t, int> lam;
    for (const auto& s : x.sources())
        for (unsigned a = 1; a + k <= n; ++a) ++lam[s.kmer_at(a, k + 1)];

    const std::uint64_t node_mask = (1ULL << k) - 1;
    for (const auto& [e, c] : lam) {
        S.node_word.push_back(e >> 1);
        S.node_word.push_back(e & node_mask);
    }
    std::sort(S.node_word.begin(), S.node_word.end());
    S.node_word.erase(std::unique(S.node_word.begin(), S.node_word.end()),
                      S.node_word.end());
    const int N = static_cast<int>(S.node_word.size());
    auto nid = [&](std::uint64_t w) {
        return static_cast<int>(
            std::lower_bound(S.node_word.begin(), S.node_word.end(), w) -
            S.node_word.begin());
    };

    struct Arc {
        int other, count;
        std::uint8_t bit;
    };
    std::vector<std::vector<Arc>> outs(N), ins(N);
    for (const auto& [e, c] : lam) {
        const int u = nid(e >> 1), v = nid(e & node_mask);
        outs[u].push_back({v, c, static_cast<std::uint8_t>(e & 1)});
        ins[v].push_back({u, c, 0});
    }

    std::vector<long long> d(N, 0); // out traversals minus in traversals
    for (int v = 0; v < N; ++v) {
        for (const auto& a : outs[v]) d[v] += a.count;
        for (const auto& a : ins[v]) d[v] -= a.count;
    }

    // each walk contributes +1 at its start and -1 at its end, so the positive
    // divergences sum to m exactly when no node hosts both a start and an end;
    // then every equivalent set must start and end at the same slots
    long long sum_pos = 0;
    for (int v = 0; v < N; ++v)
        if (d[v] > 0) sum_pos += d[v];
    S.starts_forced = (sum_pos == S.m);
    // an unforced instance may also contain components with no branch node at
    // all (closed walks around a cycle), which the chain walk below cannot
    // cover; bail out and let the caller fall back to the walk sweep
    if (!S.starts_forced) return S;

    // branch nodes: branching or divergence
    S.cidx.assign(N, -1);
    for (int v = 0; v < N; ++v) {
        if (outs[v].size() >= 2 || ins[v].size() >= 2 || d[v] != 0) {
            S.cidx[v] = static_cast<int>(S.branch_node.size());
            S.branch_node.push_back(v);
        }
    }
    const int C = static_cast<int>(S.branch_node.size());
    S.start_slots.assign(C, 0);
    S.end_slots.assign(C, 0);
    S.cin.assign(C, {});
    S.cou.assign(C, {});
    for (int ci = 0; ci < C; ++ci) {
        const long long dv = d[S.branch_node[ci]];
        S.start_slots[ci] = static_cast<int>(std::max(0LL, dv));
        S.end_slots[ci] = static_cast<int>(std::max(0LL, -dv));
    }

    // chains: follow out-edges through non-branch interiors
    long long covered = 0;
    for (int ci = 0; ci < C; ++ci) {
        const int u = S.branch_node[ci];
        for (const auto& first : outs[u]) {
            Chain ch;
            ch.from = ci;
            ch.mult = first.count;
            int cur = first.other;
            ch.bits.push_back(first.bit);
            ch.len = 1;
            while (S.cidx[cur] < 0) {
                // interior: single in, single out, zero divergence
                if (outs[cur].size() != 1)
                    throw StructureViolation("pairing: interior node degree");
                const auto& nx = outs[cur][0];
                if (nx.count != ch.mult)
                    throw StructureViolation("pairing: interior multiplicity");
                ch.bits.push_back(nx.bit);
                ++ch.len;
                cur = nx.other;
                if (ch.len > static_cast<int>(lam.size()) + 1)
                    throw StructureViolation("pairing: chain runaway");
            }
            ch.to = S.cidx[cur];
            covered += ch.len;
            S.cin[ch.to].push_back(static_cast<int>(S.chains.size()));
            S.cou[ci].push_back(static_cast<int>(S.chains.size()));
            S.chains.push_back(std::move(ch));
        }
    }
    if (covered != static_cast<long long>(lam.size()))
        throw StructureViolation("pairing: chain cover mismatch");
    long long steps = 0;
    for (const auto& ch : S.chains) steps += 1LL * ch.len * ch.mult;
    if (steps != 1LL * S.m * S.len)
        throw StructureViolation("pairing: step total mismatch");

    // extremity of each branch node: distance of its closest occurrence to a
    // sequence boundary; processed outermost-first so fragments grow from
    // both ends and complete (and get length-checked) as early as possible
    S.ext.assign(C, S.len);
    const unsigned np = n - k + 1;
    for (const auto& s : x.sources()) {
        for (unsigned a = 1; a <= np; ++a) {
            const int ci = S.cidx[nid(s.kmer_at(a, k))];
            if (ci >= 0)
                S.ext[ci] = std::min(
                    S.ext[ci], static_cast<int>(std::min(a - 1, np - a)));
        }
    }

    // x's own pairing, as (in item, out item) per branch node; items are pass
    // ids (chain base + encounter index), -1 for a start/end slot. Guides the
    // search: the first descent realizes x, alternatives radiate outward.
    {
        std::vector<int> base(S.chains.size() + 1, 0);
        for (std::size_t c = 0; c < S.chains.size(); ++c)
            base[c + 1] = base[c] + S.chains[c].mult;
        std::vector<int> seen(S.chains.size(), 0);
        S.ref_pairs.assign(C, {});
        for (const auto& s : x.sources()) {
            unsigned a = 1;
            int ci = S.cidx[nid(s.kmer_at(1, k))];
            if (ci < 0)
                throw StructureViolation("pairing: walk start not a branch node");
            int prev = -1;
            while (a + k <= n) {
                const std::uint8_t bit =
                    static_cast<std::uint8_t>(s.kmer_at(a, k + 1) & 1);
                int chosen = -1;
                for (int c : S.cou[ci])
                    if (S.chains[c].bits[0] == bit) chosen = c;
                if (chosen < 0)
                    throw StructureViolation("pairing: walk leaves chain graph");
                const int pass = base[chosen] + seen[chosen]++;
                S.ref_pairs[ci].emplace_back(prev, pass);
                a += static_cast<unsigned>(S.chains[chosen].len);
                ci = S.chains[chosen].to;
                prev = pass;
            }
            S.ref_pairs[ci].emplace_back(prev, -1);
        }
        for (std::size_t c = 0; c < S.chains.size(); ++c)
            if (seen[c] != S.chains[c].mult)
                throw StructureViolation("pairing: walk multiplicity mismatch");
    }

    // achievable completion lengths over the chain graph; skipped when the
    // tables would be large (the prune is optional, the search stays correct)
    if (std::size_t(C) * ((S.len + 64) / 64) <= (std::size_t(1) << 22)) {
        auto relax = [&](ReachTable& reach, bool forward) {
            reach = ReachTable(C, S.len);
            for (int ci = 0; ci < C; ++ci)
                if ((forward ? S.start_slots[ci] : S.end_slots[ci]) > 0)
                    reach.set_zero(ci);
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& ch : S.chains)
                    grew |= reach.or_shifted(forward ? ch.to : ch.from,
                                             forward ? ch.from : ch.to, ch.len);
            }
        };
        relax(S.reach_start, true);
        relax(S.reach_end, false);
    }

    // Alternative traversal counts. Any other valid assignment differs by a
    // flow h with h(e) >= 1-lambda(e) and sum_e h = 0, its start/end
    // relocations bounded by the forced slots. Such an h (plus its relocation
    // flow) decomposes into simple cycles over forward arcs (cost 1), reverse
    // arcs on multiply-covered edges (cost -1), and zero-cost hub arcs for
    // the relocations; the per-edge direction follows sign(h), so no cycle
    // uses both directions of one edge, and the costs add up to sum_e h = 0,
    // forcing some cycle with real cost <= 0 and at least one real arc.
    // Scaling to M*c - 1 per real arc makes exactly those the negative
    // cycles. The one negative cycle that does NOT witness an h is the pair
    // forward(e)+reverse(e) (net h = 0); a longer simple cycle cannot contain
    // both directions of an edge, so it suffices to relax over arc states and
    // skip the immediate same-edge flip (best/second-best per node).
    // Convergence proves no alternative exists; hitting the pass cap is
    // reported as unforced, which is only ever conservative.
    {
        struct BfArc {
            int from, to;
            long long w;
            int flip;
        };
        std::vector<BfArc> arcs;
        const int TOP = N, BOT = N + 1;
        long long n_real = 0;
        for (const auto& [e, c] : lam) n_real += (c >= 2) ? 2 : 1;
        const long long M = 4 * (N + n_real + 16);
        for (const auto& [e, c] : lam) {
            const int u = nid(e >> 1), v = nid(e & node_mask);
            const int f = static_cast<int>(arcs.size());
            arcs.push_back({u, v, M - 1, -1});
            if (c >= 2) {
                arcs.push_back({v, u, -M - 1, f});
                arcs[f].flip = f + 1;
            }
        }
        for (int v = 0; v < N; ++v) {
            if (d[v] > 0) arcs.push_back({v, TOP, 0, -1});
            if (d[v] < 0) arcs.push_back({BOT, v, 0, -1});
            arcs.push_back({TOP, v, 0, -1});
            arcs.push_back({v, BOT, 0, -1});
        }
        const int A = static_cast<int>(arcs.size());
        constexpr long long kInf = 1LL << 60;
        std::vector<long long> dist(A, 0);
        std::vector<long long> b1(N + 2), b2(N + 2);
        std::vector<int> a1(N + 2);
        bool changed = true;
        int pass = 0;
        constexpr int kPassCap = 4096;
        while (changed && pass < kPassCap) {
            changed = false;
            ++pass;
            std::fill(b1.begin(), b1.end(), kInf);
            std::fill(b2.begin(), b2.end(), kInf);
            std::fill(a1.begin(), a1.end(), -1);
            for (int a = 0; a < A; ++a) {
                const int h = arcs[a].to;
                if (dist[a] < b1[h]) {
                    b2[h] = b1[h];
                    b1[h] = dist[a];
                    a1[h] = a;
                } else if (dist[a] < b2[h]) {
                    b2[h] = dist[a];
                }
            }
            for (int a = 0; a < A; ++a) {
                const int t = arcs[a].from;
                const long long pb =
                    (arcs[a].flip >= 0 && a1[t] == arcs[a].flip) ? b2[t] : b1[t];
                if (pb >= kInf) continue;
                const long long nd = pb + arcs[a].w;
                if (nd < dist[a]) {
                    dist[a] = nd;
                    changed = true;
                }
            }
        }
        S.flow_forced = !changed;
    }
    return S;
}

class PairingSolver {
public:
    PairingSolver(const Structure& s, const Budget& budget)
        : S(s),
          max_sol_(budget.max_solutions),
          max_exp_(budget.max_expansions) {}

    void run(PairingResult& r) {
        const int C = static_cast<int>(S.branch_node.size());
        pass_chain_.clear();
        for (int c = 0; c < static_cast<int>(S.chains.size()); ++c)
            for (int t = 0; t < S.chains[c].mult; ++t) pass_chain_.push_back(c);
        P_ = static_cast<int>(pass_chain_.size());
        chain_base_.assign(S.chains.size() + 1, 0);
        for (std::size_t c = 0; c < S.chains.size(); ++c)
            chain_base_[c + 1] = chain_base_[c] + S.chains[c].mult;

        par_.resize(P_);
        sz_.assign(P_, 1);
        frag_.resize(P_);
        next_.assign(P_, -1);
        for (int p = 0; p < P_; ++p) {
            par_[p] = p;
            const Chain& ch = S.chains[pass_chain_[p]];
            frag_[p] = Frag{ch.len, ch.from, ch.to, p, p};
        }

        order_.resize(C);
        for (int i = 0; i < C; ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            if (S.ext[a] != S.ext[b]) return S.ext[a] < S.ext[b];
            return S.node_word[S.branch_node[a]] < S.node_word[S.branch_node[b]];
        });

        dfs(0);
        r.solutions = std::move(solutions_);
        r.exhausted = !truncated_ && !stop_;
        r.expansions = expansions_;
    }

private:
    static constexpr int kSealed = -1; // left/right hold a branch idx when open
    static constexpr std::size_t kMatrixCap = 4096;

    struct Frag {
        int len = 0;
        int left = 0, right = 0;
        int head = 0, tail = 0; // pass ids
    };

    struct Undo {
        enum Kind { Union, FragOnly, Next, Completed } kind;
        int a = 0, b = 0;
        int old_sz = 0;
        Frag old_frag;
    };

    int find(int p) const {
        while (par_[p] != p) p = par_[p];
        return p;
    }

    std::size_t checkpoint() const { return undo_.size(); }

    void rollback(std::size_t cp) {
        while (undo_.size() > cp) {
            const Undo& u = undo_.back();
            switch (u.kind) {
                case Undo::Union:
                    par_[u.a] = u.a;
                    sz_[u.b] = u.old_sz;
                    frag_[u.b] = u.old_frag;
                    break;
                case Undo::FragOnly:
                    frag_[u.a] = u.old_frag;
                    break;
                case Undo::Next:
                    next_[u.a] = -1;
                    break;
                case Undo::Completed:
                    --completed_;
                    break;
            }
            undo_.pop_back();
        }
    }

    bool note_complete(int len) {
        if (len != S.len) return false;
        undo_.push_back({Undo::Completed, 0, 0, 0, {}});
        ++completed_;
        return true;
    }

    // a fragment must complete to exactly the trail length; its required
    // remainder has to be an achievable sum of reach lengths on open sides
    bool feasible(const Frag& f) const {
        if (!S.reach_start.enabled()) return true;
        const int t = S.len - f.len;
        if (f.left == kSealed) return S.reach_end.test(f.right, t);
        if (f.right == kSealed) return S.reach_start.test(f.left, t);
        const std::uint64_t* a = S.reach_start.row(f.left);
        for (int w = 0; w * 64 <= t; ++w) {
            std::uint64_t bits = a[w];
            if (w == t / 64 && t % 64 != 63) bits &= (2ULL << (t % 64)) - 1;
            while (bits) {
                const int i = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                if (S.reach_end.test(f.right, t - i)) return true;
            }
        }
        return false;
    }

    bool glue(int pin, int pout) {
        const int r1 = find(pin), r2 = find(pout);
        if (r1 == r2) return false; // would close a loop
        const Frag f1 = frag_[r1], f2 = frag_[r2];
        const int nl = f1.len + f2.len;
        if (nl > S.len) return false;
        const int rp = (sz_[r1] >= sz_[r2]) ? r1 : r2;
        const int rc = (rp == r1) ? r2 : r1;
        undo_.push_back({Undo::Union, rc, rp, sz_[rp], frag_[rp]});
        par_[rc] = rp;
        sz_[rp] += sz_[rc];
        frag_[rp] = Frag{nl, f1.left, f2.right, f1.head, f2.tail};
        undo_.push_back({Undo::Next, pin, 0, 0, {}});
        next_[pin] = pout;
        if (f1.left == kSealed && f2.right == kSealed) return note_complete(nl);
        return feasible(frag_[rp]);
    }

    bool seal_left(int p) {
        const int r = find(p);
        undo_.push_back({Undo::FragOnly, r, 0, 0, frag_[r]});
        frag_[r].left = kSealed;
        if (frag_[r].right == kSealed) return note_complete(frag_[r].len);
        return feasible(frag_[r]);
    }

    bool seal_right(int p) {
        const int r = find(p);
        undo_.push_back({Undo::FragOnly, r, 0, 0, frag_[r]});
        frag_[r].right = kSealed;
        if (frag_[r].left == kSealed) return note_complete(frag_[r].len);
        return feasible(frag_[r]);
    }

    // ---- matchings at one node -------------------------------------------

    // item: pass id, or -1 for a start/end slot. Items with equal keys carry
    // identical bit content and availability, so one realization per
    // group-level contingency matrix covers them all.
    using Key = std::array<int, 4>;

    Key item_key(int item, bool in_side) const {
        if (item < 0) return Key{in_side ? 3 : 4, 0, 0, 0};
        const int r = find(item);
        if (sz_[r] == 1)
            return Key{1, pass_chain_[item], frag_[r].left == kSealed,
                       frag_[r].right == kSealed};
        return Key{2, pass_chain_[item], r, 0};
    }

    struct Matching {
        std::vector<std::pair<int, int>> pairs;
        int ref_dist = 0;
    };

    std::vector<Matching> gen_matchings(int v) {
        std::vector<int> in_items, out_items;
        for (int c : S.cin[v])
            for (int t = 0; t < S.chains[c].mult; ++t)
                in_items.push_back(chain_base_[c] + t);
        for (int t = 0; t < S.start_slots[v]; ++t) in_items.push_back(-1);
        for (int c : S.cou[v])
            for (int t = 0; t < S.chains[c].mult; ++t)
                out_items.push_back(chain_base_[c] + t);
        for (int t = 0; t < S.end_slots[v]; ++t) out_items.push_back(-1);
        if (in_items.size() != out_items.size())
            throw StructureViolation("pairing: slot imbalance");

        std::map<Key, std::vector<int>> gi, go;
        for (int it : in_items) gi[item_key(it, true)].push_back(it);
        for (int it : out_items) go[item_key(it, false)].push_back(it);
        std::vector<std::pair<Key, std::vector<int>>> gin(gi.begin(), gi.end());
        std::vector<std::pair<Key, std::vector<int>>> gout(go.begin(), go.end());
        const int GI = static_cast<int>(gin.size());
        const int GO = static_cast<int>(gout.size());

        // x's own pairing over the same groups; realizations below reuse these
        // pairs verbatim wherever the matrix allows, so the all-reference
        // branch reproduces x's state exactly instead of a relabeled twin
        std::vector<int> ref_cell(GI * GO, 0);
        std::vector<std::vector<std::pair<int, int>>> ref_by_cell(GI * GO);
        {
            auto gidx = [](const std::vector<std::pair<Key, std::vector<int>>>& g,
                           const Key& key) {
                int lo = 0, hi = static_cast<int>(g.size());
                while (lo < hi) {
                    const int mid = (lo + hi) / 2;
                    if (g[mid].first < key)
                        lo = mid + 1;
                    else
                        hi = mid;
                }
                return lo;
            };
            for (const auto& [pi, po] : S.ref_pairs[v]) {
                const int i = gidx(gin, item_key(pi, true));
                const int j = gidx(gout, item_key(po, false));
                ++ref_cell[i * GO + j];
                ref_by_cell[i * GO + j].emplace_back(pi, po);
            }
        }

        std::vector<Matching> result;
        std::vector<int> cell(GI * GO, 0);
        std::vector<int> rem_out(GO);
        for (int j = 0; j < GO; ++j)
            rem_out[j] = static_cast<int>(gout[j].second.size());

        auto emit = [&]() {
            if (result.size() >= kMatrixCap) {
                truncated_ = true;
                return;
            }
            Matching m;
            std::vector<std::vector<int>> rin(GI), rout(GO);
            for (int i = 0; i < GI; ++i) rin[i] = gin[i].second;
            for (int j = 0; j < GO; ++j) rout[j] = gout[j].second;
            auto erase_one = [](std::vector<int>& v, int val) {
                v.erase(std::find(v.begin(), v.end(), val));
            };
            std::vector<int> taken(GI * GO, 0);
            for (int c = 0; c < GI * GO; ++c) {
                const int take = std::min<int>(
                    cell[c], static_cast<int>(ref_by_cell[c].size()));
                taken[c] = take;
                for (int t = 0; t < take; ++t) {
                    m.pairs.push_back(ref_by_cell[c][t]);
                    erase_one(rin[c / GO], ref_by_cell[c][t].first);
                    erase_one(rout[c % GO], ref_by_cell[c][t].second);
                }
            }
            std::vector<int> ii(GI, 0), oi(GO, 0);
            for (int i = 0; i < GI; ++i)
                for (int j = 0; j < GO; ++j)
                    for (int t = taken[i * GO + j]; t < cell[i * GO + j]; ++t)
                        m.pairs.emplace_back(rin[i][ii[i]++], rout[j][oi[j]++]);
            for (int c = 0; c < GI * GO; ++c)
                m.ref_dist += std::abs(cell[c] - ref_cell[c]);
            result.push_back(std::move(m));
        };
        // fill the matrix row by row; a start slot never pairs with an end
        // slot (that would be a zero-length walk)
        auto rec = [&](auto&& self, int i, int j, int left) -> void {
            if (i == GI) {
                emit();
                return;
            }
            if (j == GO) {
                if (left == 0)
                    self(self, i + 1, 0,
                         i + 1 < GI ? static_cast<int>(gin[i + 1].second.size())
                                    : 0);
                return;
            }
            const bool forbidden = gin[i].first[0] == 3 && gout[j].first[0] == 4;
            const int hi = forbidden ? 0 : std::min(left, rem_out[j]);
            for (int c = (j == GO - 1 ? (forbidden ? 0 : left) : 0); c <= hi; ++c) {
                if (j == GO - 1 && c != left) break; // last column takes the rest
                cell[i * GO + j] = c;
                rem_out[j] -= c;
                self(self, i, j + 1, left - c);
                rem_out[j] += c;
                cell[i * GO + j] = 0;
            }
        };
        if (GI > 0)
            rec(rec, 0, 0, static_cast<int>(gin[0].second.size()));
        else
            result.push_back({});
        std::stable_sort(result.begin(), result.end(),
                         [](const Matching& a, const Matching& b) {
                             return a.ref_dist < b.ref_dist;
                         });
        if (result.empty() || result[0].ref_dist != 0) {
            // keep x's own pairing reachable even when the cap bites
            Matching ref;
            ref.pairs = S.ref_pairs[v];
            result.insert(result.begin(), std::move(ref));
        }
        return result;
    }

    bool apply_pair(int in_item, int out_item) {
        if (in_item >= 0 && out_item >= 0) return glue(in_item, out_item);
        if (in_item < 0 && out_item >= 0) return seal_left(out_item);
        if (in_item >= 0 && out_item < 0) return seal_right(in_item);
        return false;
    }

    void dfs(std::size_t oi) {
        if (stop_ || truncated_) return;
        if (oi == order_.size()) {
            record();
            return;
        }
        auto ms = gen_matchings(order_[oi]);
        for (auto& mt : ms) {
            if (expansions_ == max_exp_) {
                truncated_ = true;
                return;
            }
            ++expansions_;
            const std::size_t cp = checkpoint();
            bool ok = true;
            for (auto [a, b] : mt.pairs)
                if (!apply_pair(a, b)) {
                    ok = false;
                    break;
                }
            if (ok) dfs(oi + 1);
            rollback(cp);
            if (stop_ || truncated_) return;
        }
    }

    void record() {
        if (completed_ != S.m)
            throw StructureViolation("pairing: incomplete record");
        std::vector<BitSequence> seqs;
        std::vector<char> seen(P_, 0);
        for (int p = 0; p < P_; ++p) {
            const int r = find(p);
            if (seen[r]) continue;
            seen[r] = 1;
            BitSequence s(0);
            const Chain& first = S.chains[pass_chain_[frag_[r].head]];
            const std::uint64_t w = S.node_word[S.branch_node[first.from]];
            for (unsigned b = S.k; b-- > 0;) s.append_bit((w >> b) & 1);
            for (int q = frag_[r].head; q != -1; q = next_[q])
                for (std::uint8_t bit : S.chains[pass_chain_[q]].bits)
                    s.append_bit(bit);
            seqs.push_back(std::move(s));
        }
        SourceSet cand(std::move(seqs));
        for (const auto& got : solutions_)
            if (got.multiset_equal(cand)) return;
        solutions_.push_back(std::move(cand));
        if (solutions_.size() >= max_sol_) stop_ = true;
    }

    const Structure& S;
    std::uint64_t max_sol_, max_exp_;
    std::vector<int> pass_chain_, chain_base_;
    int P_ = 0;
    std::vector<int> par_, sz_, next_, order_;
    std::vector<Frag> frag_;
    std::vector<Undo> undo_;
    std::vector<SourceSet> solutions_;
    std::uint64_t expansions_ = 0;
    int completed_ = 0;
    bool truncated_ = false, stop_ = false;
};

} // namespace

PairingResult enumerate_by_pairing(const SourceSet& x, unsigned k,
                                   const Budget& budget) {
    if (x.size() == 0) throw std::invalid_argument("pairing: empty source set");
    if (k < 1 || k + 1 > x.n())
        throw std::invalid_argument("pairing: need 1 <= k, k+1 <= n");
    const Structure S = build_structure(x, k);
    PairingResult r;
    r.starts_forced = S.starts_forced;
    r.flow_forced = S.flow_forced;
    if (!S.starts_forced) return r;
    PairingSolver(S, budget).run(r);
    return r;
}

} // namespace krec
