#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krec/bitseq.hpp"

namespace krec {

/// Thrown when a de Bruijn graph falls outside the structural regime the
/// labeling and reconstruction routines are specified for.
class StructureViolation : public std::runtime_error {
public:
    explicit StructureViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Instance dimensions. n = sequence length, m = number of sequences,
/// k = node word length (edges are (k+1)-mers). alpha/beta are retained when
/// the instance came from the scaling parameterization m = n^alpha,
/// k = beta*log2(n).
struct Params {
    unsigned n = 0;
    unsigned m = 0;
    unsigned k = 0;
    std::optional<double> alpha;
    std::optional<double> beta;

    /// Number of k-mer windows per sequence.
    unsigned n_prime() const { return n - k + 1; }
};

/// Validates and builds Params. Requires n >= 4, m >= 1, 2 <= k <= 63 and
/// k+1 <= n. (k is capped at 63 so that a (k+1)-mer packs into one word.)
Params make_params(unsigned n, unsigned m, unsigned k);

/// Scaling parameterization: m = max(1, round(n^alpha)),
/// k = round(beta*log2(n)) clamped to [2, n-1]; then validated as above.
Params derive_params(unsigned n, double alpha, double beta);

/// An unordered collection of m equal-length binary sequences. Stored in the
/// order given; identity is multiset identity. source(i) is 1-based.
class SourceSet {
public:
    explicit SourceSet(std::vector<BitSequence> sources);

    std::size_t size() const { return sources_.size(); }
    unsigned n() const { return n_; }

    const BitSequence& source(std::size_t i) const;
    std::span<const BitSequence> sources() const { return sources_; }

    std::vector<BitSequence> sorted() const;
    bool multiset_equal(const SourceSet& o) const;

    std::string to_text() const;                       // one sequence per line
    static SourceSet from_text(const std::string& s);

private:
    std::vector<BitSequence> sources_;
    unsigned n_ = 0;
};

/// Set of (k+1)-mers, i.e. the edge set of the instance's de Bruijn graph.
/// k names the node length, so elements are (k+1)-bit words. Strict set
/// semantics: values are sorted and unique.
class KmerSet {
public:
    KmerSet(unsigned k, std::vector<std::uint64_t> values); // sorts + dedupes

    unsigned k() const { return k_; }
    std::size_t size() const { return values_.size(); }
    std::span<const std::uint64_t> values() const { return values_; }
    bool contains(std::uint64_t v) const;

    bool operator==(const KmerSet& o) const = default;

    std::string to_text() const;                       // sorted, one per line
    static KmerSet from_text(const std::string& s);

private:
    unsigned k_ = 0;
    std::vector<std::uint64_t> values_;
};

/// m independent uniform sequences of length n. Sequence i is drawn from a
/// stream seeded by derive_seed(seed, i), so a source set is reproducible
/// from (params, seed) alone.
SourceSet generate_sources(const Params& params, std::uint64_t seed);

/// Union of the (k+1)-mer sets of all sources: Y = union_i S_{k+1}(x_i).
KmerSet extract_kmer_set(const SourceSet& x, unsigned k);

/// Renders a packed w-bit word as a 0/1 string.
std::string word_to_string(std::uint64_t v, unsigned w);

/// Parses a 0/1 string of length <= 64 into a packed word.
std::uint64_t word_from_string(std::string_view s);

} // namespace krec
