#pragma once

#include <cstdint>
#include <vector>

#include "krec/core.hpp"
#include "krec/reconstruct.hpp"

namespace krec {

struct PairingResult {
    std::vector<SourceSet> solutions; // distinct multisets, discovery order
    bool starts_forced = false; // trail endpoints pinned by degree imbalance
    bool flow_forced = false;   // no alternative per-edge traversal counts exist
    bool exhausted = false;     // the pairing space was swept completely
    std::uint64_t expansions = 0; // matchings applied
};

/// Enumerates source sets equivalent to x (same (k+1)-mer union, same shape)
/// by re-pairing in/out traversal slots at the branch nodes of the condensed
/// de Bruijn graph. Knowing x itself — not just its k-mer union — fixes the
/// per-edge traversal counts, and the search is anchored at x's own pairing,
/// so the first descent reproduces x and alternatives radiate outward.
///
/// Applies only when starts_forced comes back true; otherwise the walk starts
/// are not pinned and the caller should use enumerate_reconstructions. When
/// exhausted, solutions lists every equivalent set sharing x's traversal
/// counts; if flow_forced also holds, no other counts are possible and the
/// list is complete outright, so a single entry certifies uniqueness.
PairingResult enumerate_by_pairing(const SourceSet& x, unsigned k,
                                   const Budget& budget);

} // namespace krec
