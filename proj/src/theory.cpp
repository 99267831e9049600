#include "krec/theory.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

namespace krec {

RegionClass classify_region(double alpha, double beta) {
    const double upper = std::max(2 * alpha + 1, alpha + 2);       // feasible above
    const double lower = std::max(2 * alpha + 1, alpha + 1.5);     // infeasible below
    if (beta > upper) {
        return {Verdict::Feasible,
                2 * alpha + 1 >= alpha + 2 ? Bound::TwoAlphaPlusOne : Bound::AlphaPlusTwo};
    }
    if (beta < lower) {
        return {Verdict::Infeasible,
                2 * alpha + 1 >= alpha + 1.5 ? Bound::TwoAlphaPlusOne
                                             : Bound::AlphaPlusThreeHalves};
    }
    return {Verdict::Unknown, Bound::None};
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Feasible: return "feasible";
        case Verdict::Infeasible: return "infeasible";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

const char* bound_name(Bound b) {
    switch (b) {
        case Bound::TwoAlphaPlusOne: return "2a+1";
        case Bound::AlphaPlusTwo: return "a+2";
        case Bound::AlphaPlusThreeHalves: return "a+3/2";
        case Bound::None: return "none";
    }
    return "none";
}

EventBounds event_bounds(const Params& p) {
    const double m = p.m, n = p.n, k = p.k;
    const double q = std::ldexp(1.0, -static_cast<int>(p.k));   // 2^-k
    const double q2 = q * q;
    EventBounds b;
    b.a = m * n * n * q;
    b.b = m * m * m * n * n * n * (2 * k) * q2 + m * m * n * n * (2 * k) * (2 * k) * q2;
    b.c = 2 * m * m * n * q;
    b.d = m * m * n * q;
    return b;
}

double repeat_free_bound(const Params& p) {
    const double m = p.m, n = p.n;
    const double q = std::ldexp(1.0, -static_cast<int>(p.k));
    return (m * m + m) * n * n * q;
}

std::uint64_t v_statistic(const SourceSet& x, unsigned k) {
    if (k < 1 || k > 63 || k > x.n())
        throw std::invalid_argument("v_statistic: k out of range");
    std::uint64_t v = 0;
    for (unsigned i = 1; i <= x.size(); ++i)
        for (unsigned j = i + 1; j <= x.size(); ++j)
            for (unsigned a = 1; a + k - 1 <= x.n(); ++a)
                v += x.source(i).kmer_at(a, k) == x.source(j).kmer_at(a, k);
    return v;
}

std::uint64_t u_statistic(const SourceSet& x, unsigned k) {
    if (k < 1 || k > 63 || k > x.n())
        throw std::invalid_argument("u_statistic: k out of range");
    const unsigned np = x.n() - k + 1;
    std::uint64_t u = 0;
    for (unsigned i = 1; i <= x.size(); ++i)
        for (unsigned j = i + 1; j <= x.size(); ++j) {
            std::unordered_map<std::uint64_t, std::vector<unsigned>> pos_j;
            pos_j.reserve(np);
            for (unsigned c = 1; c <= np; ++c)
                pos_j[x.source(j).kmer_at(c, k)].push_back(c);
            std::unordered_map<long, std::uint64_t> gap_count;
            for (unsigned a = 1; a <= np; ++a) {
                auto it = pos_j.find(x.source(i).kmer_at(a, k));
                if (it == pos_j.end()) continue;
                for (unsigned c : it->second) ++gap_count[static_cast<long>(c) - a];
            }
            for (const auto& [g, cnt] : gap_count) u += cnt * (cnt - 1) / 2;
        }
    return u;
}

namespace {
double choose2(double m) { return m * (m - 1) / 2; }
} // namespace

MomentReport moments_V(const Params& p) {
    const double m = p.m, n = p.n, k = p.k;
    const double np = p.n_prime();
    const double q = std::ldexp(1.0, -static_cast<int>(p.k));
    MomentReport r;
    r.e_first = choose2(m) * np * q;
    r.e_second_bound = m * m * m * m * n * n * q * q + 2 * m * m * n * k * q;
    r.pz_lower = r.e_second_bound > 0 ? r.e_first * r.e_first / r.e_second_bound : 0;
    return r;
}

MomentReport moments_U(const Params& p) {
    const double m = p.m, n = p.n, k = p.k;
    const double np = p.n_prime();
    const double q2 = std::ldexp(1.0, -2 * static_cast<int>(p.k));
    MomentReport r;
    r.e_first = choose2(m) * (np / 4) * (np / 4) * (np / 4) * q2;
    const double lead = m * m * n * n * n * q2;
    r.e_second_bound = lead * lead + m * m * n * n * n * (2 * k) * (2 * k) * (2 * k) * q2;
    r.pz_lower = r.e_second_bound > 0 ? r.e_first * r.e_first / r.e_second_bound : 0;
    return r;
}

} // namespace krec
