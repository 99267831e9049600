#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "krec/core.hpp"

namespace krec {

/// Repeat-event taxonomy over a source set x and word length k. All of these
/// are statements about k-mer windows x_i(a) (1-based positions).
///   A: a window value repeats within one sequence: x_i(a) = x_i(b), a < b.
///   B: two repeat pairs anchored in one sequence overlap: x_i(a) = x_j(c)
///      and x_i(b) = x_l(d) with 0 <= b-a < k, where the two other
///      occurrences are genuinely distinct ((j,c) != (i,a), (l,d) != (i,b))
///      and differ from each other in owner or offset (j != l or d-c != b-a).
///   C: a boundary window x_i(1) or x_i(n') also occurs elsewhere.
///   D: an aligned cross repeat: x_i(a) = x_j(a), i != j.
///   H: an equal-gap double cross repeat: x_i(a) = x_j(c) and
///      x_i(b) = x_j(c+b-a) with a < b, i != j.
enum class EventKind { A, B, C, D, H };

char event_letter(EventKind kind);

/// A concrete occurrence certifying an event. Indices i, j, l name sequences
/// and a, b, c, d name positions; all 1-based, unused fields left zero.
/// Field use by kind: A(i,a,b) B(i,j,l,a,b,c,d) C(i,j,a,c) D(i,j,a) H(i,j,a,b,c).
struct EventWitness {
    EventKind kind = EventKind::A;
    unsigned i = 0, j = 0, l = 0;
    unsigned a = 0, b = 0, c = 0, d = 0;

    /// Single-line JSON with fields in the fixed order kind,i,j,l,a,b,c,d
    /// (unused fields omitted).
    std::string to_json() const;

    bool operator==(const EventWitness&) const = default;
};

// Detectors return the lexicographically smallest witness, ordered by the
// kind-specific tuple A:(i,a,b) B:(i,a,b,j,c,l,d) C:(i,a,j,c) D:(i,j,a)
// H:(i,j,a,b,c), or nullopt if the event is absent.
std::optional<EventWitness> detect_A(const SourceSet& x, unsigned k);
std::optional<EventWitness> detect_B(const SourceSet& x, unsigned k);
std::optional<EventWitness> detect_C(const SourceSet& x, unsigned k);
std::optional<EventWitness> detect_D(const SourceSet& x, unsigned k);
std::optional<EventWitness> detect_H(const SourceSet& x, unsigned k);

std::optional<EventWitness> detect(EventKind kind, const SourceSet& x, unsigned k);

// Exhaustive witness-tuple counts (intended for small instances; count_B in
// particular enumerates all overlapping pairs).
std::uint64_t count_A(const SourceSet& x, unsigned k);
std::uint64_t count_B(const SourceSet& x, unsigned k);
std::uint64_t count_C(const SourceSet& x, unsigned k);
std::uint64_t count_D(const SourceSet& x, unsigned k);
std::uint64_t count_H(const SourceSet& x, unsigned k);

/// Re-checks the window equalities and side constraints a witness claims.
bool validate_witness(const SourceSet& x, unsigned k, const EventWitness& w);

/// True iff some k-mer window value occurs more than once across all of x.
bool has_repeated_kmer(const SourceSet& x, unsigned k);

} // namespace krec
