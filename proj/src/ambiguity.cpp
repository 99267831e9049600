#include "krec/ambiguity.hpp"

namespace krec {

namespace {

void check_pair(const SourceSet& x, unsigned i, unsigned j) {
    if (i < 1 || j < 1 || i > x.size() || j > x.size() || i == j)
        throw std::invalid_argument("swap: bad sequence indices");
}

BitSequence splice(const BitSequence& head, const BitSequence& mid,
                   const BitSequence& tail) {
    BitSequence r = head;
    r.append(mid);
    r.append(tail);
    return r;
}

} // namespace

SourceSet construct_swap_D(const SourceSet& x, const EventWitness& w) {
    if (w.kind != EventKind::D) throw std::invalid_argument("swap: not a D witness");
    check_pair(x, w.i, w.j);
    const unsigned n = x.n();
    if (w.a < 1 || w.a > n) throw std::invalid_argument("swap: position out of range");
    const BitSequence& xi = x.source(w.i);
    const BitSequence& xj = x.source(w.j);

    std::vector<BitSequence> out(x.sources().begin(), x.sources().end());
    out[w.i - 1] = splice(xi.substr(1, w.a - 1), BitSequence(), xj.substr(w.a, n));
    out[w.j - 1] = splice(xj.substr(1, w.a - 1), BitSequence(), xi.substr(w.a, n));
    return SourceSet(std::move(out));
}

SourceSet construct_swap_H(const SourceSet& x, const EventWitness& w) {
    if (w.kind != EventKind::H) throw std::invalid_argument("swap: not an H witness");
    check_pair(x, w.i, w.j);
    const unsigned n = x.n();
    if (w.a < 1 || w.a >= w.b || w.b > n || w.c < 1 || w.c + w.b - w.a - 1 > n)
        throw std::invalid_argument("swap: positions out of range");
    const BitSequence& xi = x.source(w.i);
    const BitSequence& xj = x.source(w.j);
    const unsigned d = w.c + w.b - w.a; // x_j's position matching x_i(b)

    std::vector<BitSequence> out(x.sources().begin(), x.sources().end());
    out[w.i - 1] = splice(xi.substr(1, w.a - 1), xj.substr(w.c, d - 1), xi.substr(w.b, n));
    out[w.j - 1] = splice(xj.substr(1, w.c - 1), xi.substr(w.a, w.b - 1), xj.substr(d, n));
    return SourceSet(std::move(out));
}

bool verify_equivalent(const SourceSet& x, const SourceSet& xt, unsigned k) {
    return x.size() == xt.size() && x.n() == xt.n() &&
           extract_kmer_set(x, k) == extract_kmer_set(xt, k);
}

} // namespace krec
