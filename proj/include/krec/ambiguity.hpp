#pragma once

#include "krec/core.hpp"
#include "krec/events.hpp"

namespace krec {

/// Aligned-repeat swap. Given a D witness x_i(a) = x_j(a), exchanges the
/// tails of the two sequences at position a:
///   x~_i = x_i[1:a-1] x_j[a:n],  x~_j = x_j[1:a-1] x_i[a:n].
/// The result has the same (k+1)-mer union as x. It equals x as a multiset
/// exactly when the two heads or the two tails coincide.
SourceSet construct_swap_D(const SourceSet& x, const EventWitness& w);

/// Equal-gap swap. Given an H witness x_i(a) = x_j(c), x_i(b) = x_j(c+b-a),
/// exchanges the two middle segments:
///   x~_i = x_i[1:a-1] x_j[c:c+b-a-1] x_i[b:n]
///   x~_j = x_j[1:c-1] x_i[a:b-1]     x_j[c+b-a:n].
/// Same (k+1)-mer union; degenerate exactly when the middles coincide.
SourceSet construct_swap_H(const SourceSet& x, const EventWitness& w);

/// True iff x and xt have the same shape (m, n) and the same (k+1)-mer union.
bool verify_equivalent(const SourceSet& x, const SourceSet& xt, unsigned k);

} // namespace krec
