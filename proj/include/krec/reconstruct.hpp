#pragma once

#include <cstdint>
#include <vector>

#include "krec/core.hpp"
#include "krec/debruijn.hpp"

namespace krec {

/// Search limits for the reconstruction solver. max_expansions caps the
/// number of walk-extension steps; hitting it makes results inconclusive
/// rather than wrong. max_solutions stops the enumeration early once that
/// many reconstructions have been found.
struct Budget {
    std::uint64_t max_solutions = 2;
    std::uint64_t max_expansions = 1'000'000;
};

struct ReconstructionResult {
    std::vector<SourceSet> solutions; // each internally sorted; list in lex order
    bool exhausted = false; // true iff the sweep ran to completion (no limit hit)
    std::uint64_t expansions = 0;
};

/// Enumerates source sets of m length-n sequences whose (k+1)-mer union is
/// exactly y, i.e. m walks of n-k edges covering every edge of the de Bruijn
/// graph of y. Walks are generated as non-decreasing tuples, so each multiset
/// appears exactly once and in deterministic order.
ReconstructionResult enumerate_reconstructions(const KmerSet& y, unsigned m,
                                               unsigned n, const Budget& budget);

enum class Uniqueness { Unique, Ambiguous, Unknown };

const char* uniqueness_name(Uniqueness u);

/// Decides whether x is the only source set with its (k+1)-mer union.
/// Three stages, each sound on its own: a certifying swap (a non-degenerate
/// aligned or equal-gap exchange produces a provably distinct equivalent set
/// without any search), then the anchored pairing enumeration when the
/// instance is forced (see pairing.hpp), then the walk enumeration. The
/// solver stages each run under the given budget. Unknown means the budgets
/// ran out before either a second solution or a completeness proof.
Uniqueness is_unique(const SourceSet& x, unsigned k, const Budget& budget);

/// Reference solver: filters all 2^n strings against y and assembles
/// covering m-multisets directly. Exponential; requires m*n <= 24. Exists as
/// an independent check on enumerate_reconstructions.
std::vector<SourceSet> brute_force_oracle(const KmerSet& y, unsigned m, unsigned n);

/// De Bruijn graph of the symmetric difference of two equivalent source
/// sets: nodes and edges come from the sequences of x not present in xt
/// (as a multiset), with their exact occurrence counts. Requires both
/// difference sides to induce identical edge multisets and node counts,
/// which holds for swap-generated pairs; throws StructureViolation if not.
struct DifferenceGraph {
    DeBruijnGraph graph;
    std::vector<std::uint32_t> mu;         // window count per node (both sides)
    std::vector<std::uint32_t> edge_count; // window count per edge (both sides)
    unsigned c = 0;                        // |x - xt| = |xt - x|
};

DifferenceGraph difference_graph(const SourceSet& x, const SourceSet& xt, unsigned k);

/// Number of maximal node runs shared by both sides of the difference:
/// nodes with mu >= 2, linked into runs by edges with count >= 2. When the
/// instance is free of the A, B, C and D events, any equivalent distinct
/// source set pair has at least c of these runs (and an edge joining two
/// shared nodes is then always traversed by both walks, so counting only
/// count-2 links is exact).
unsigned count_maximal_shared_subpaths(const DifferenceGraph& dg);

} // namespace krec
