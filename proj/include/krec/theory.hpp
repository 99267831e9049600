#pragma once

#include <cstdint>

#include "krec/core.hpp"

namespace krec {

enum class Verdict { Feasible, Infeasible, Unknown };

/// Which scaling constraint decides a verdict: reconstruction is possible
/// for beta > max(2*alpha+1, alpha+2) and impossible for
/// beta < max(2*alpha+1, alpha+3/2); between the two lies an open band.
enum class Bound { TwoAlphaPlusOne, AlphaPlusTwo, AlphaPlusThreeHalves, None };

struct RegionClass {
    Verdict verdict = Verdict::Unknown;
    Bound binding = Bound::None;
};

/// Classifies a point of the (alpha, beta) scaling plane. Points on either
/// boundary, or between them, come back Unknown with binding None. Ties
/// between equal binding constraints resolve to TwoAlphaPlusOne.
RegionClass classify_region(double alpha, double beta);

const char* verdict_name(Verdict v); // "feasible" / "infeasible" / "unknown"
const char* bound_name(Bound b);

/// Union-bound probabilities for the repeat events, evaluated with
/// n^-beta = 2^-k so the finite-n numbers match what the detectors see.
///   a: m*n^2*2^-k          intra-sequence repeat
///   b: m^3*n^3*2k*2^-2k + m^2*n^2*(2k)^2*2^-2k   overlapping repeat pairs
///   c: 2*m^2*n*2^-k        boundary window repeated
///   d: m^2*n*2^-k          aligned cross repeat
struct EventBounds {
    double a = 0, b = 0, c = 0, d = 0;
};

EventBounds event_bounds(const Params& p);

/// Upper bound on the probability that any window value occurs twice
/// anywhere in x: (m^2 + m) * n^2 * 2^-k.
double repeat_free_bound(const Params& p);

/// V = number of aligned cross-repeat triples (i < j, a) with
/// x_i(a) = x_j(a). V > 0 is exactly event D.
std::uint64_t v_statistic(const SourceSet& x, unsigned k);

/// U = number of equal-gap match pairs (i < j, a < b, c): matches
/// x_i(a) = x_j(c) and x_i(b) = x_j(c + b - a). U > 0 is exactly event H.
std::uint64_t u_statistic(const SourceSet& x, unsigned k);

/// Moment of a counting statistic together with the Paley-Zygmund lower
/// bound Pr(count > 0) >= e_first^2 / e_second_bound it implies.
struct MomentReport {
    double e_first = 0;        // E[V] exactly; for U a lower bound on E[U]
    double e_second_bound = 0; // upper bound on the second moment
    double pz_lower = 0;       // e_first^2 / e_second_bound
};

MomentReport moments_V(const Params& p);
MomentReport moments_U(const Params& p);

// Limits the Paley-Zygmund ratios approach in the regimes where the
// corresponding statistic certifies non-uniqueness: 1/4 for V when
// beta < 2*alpha+1, and 4^-7 for U when beta < alpha+3/2.
inline constexpr double kPzLimitV = 0.25;
inline constexpr double kPzLimitU = 1.0 / 16384.0;

} // namespace krec
