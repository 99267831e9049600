#include "krec/events.hpp"

#include <algorithm>
#include <unordered_map>

namespace krec {

namespace {

using Occ = std::pair<unsigned, unsigned>; // (i, a), 1-based

// value -> occurrences in (i, a) order
using OccIndex = std::unordered_map<std::uint64_t, std::vector<Occ>>;

OccIndex build_index(const SourceSet& x, unsigned k) {
    OccIndex idx;
    idx.reserve(x.size() * (x.n() - k + 1));
    for (unsigned i = 1; i <= x.size(); ++i)
        for (unsigned a = 1; a + k - 1 <= x.n(); ++a)
            idx[x.source(i).kmer_at(a, k)].emplace_back(i, a);
    return idx;
}

unsigned windows(const SourceSet& x, unsigned k) { return x.n() - k + 1; }

void require_k(const SourceSet& x, unsigned k) {
    if (k < 1 || k > 63 || k > x.n())
        throw std::invalid_argument("events: k out of range");
}

} // namespace

char event_letter(EventKind kind) {
    switch (kind) {
        case EventKind::A: return 'A';
        case EventKind::B: return 'B';
        case EventKind::C: return 'C';
        case EventKind::D: return 'D';
        case EventKind::H: return 'H';
    }
    return '?';
}

std::string EventWitness::to_json() const {
    std::string s = "{\"kind\":\"";
    s += event_letter(kind);
    s += '"';
    auto field = [&s](const char* name, unsigned v) {
        s += ",\"";
        s += name;
        s += "\":";
        s += std::to_string(v);
    };
    switch (kind) {
        case EventKind::A:
            field("i", i); field("a", a); field("b", b);
            break;
        case EventKind::B:
            field("i", i); field("j", j); field("l", l);
            field("a", a); field("b", b); field("c", c); field("d", d);
            break;
        case EventKind::C:
            field("i", i); field("j", j); field("a", a); field("c", c);
            break;
        case EventKind::D:
            field("i", i); field("j", j); field("a", a);
            break;
        case EventKind::H:
            field("i", i); field("j", j); field("a", a); field("b", b); field("c", c);
            break;
    }
    s += '}';
    return s;
}

std::optional<EventWitness> detect_A(const SourceSet& x, unsigned k) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    for (unsigned i = 1; i <= x.size(); ++i) {
        std::unordered_map<std::uint64_t, std::vector<unsigned>> pos;
        pos.reserve(np);
        for (unsigned a = 1; a <= np; ++a)
            pos[x.source(i).kmer_at(a, k)].push_back(a);
        unsigned best_a = 0, best_b = 0;
        for (const auto& [v, ps] : pos) {
            if (ps.size() < 2) continue;
            if (best_a == 0 || std::pair(ps[0], ps[1]) < std::pair(best_a, best_b)) {
                best_a = ps[0];
                best_b = ps[1];
            }
        }
        if (best_a != 0)
            return EventWitness{EventKind::A, i, 0, 0, best_a, best_b, 0, 0};
    }
    return std::nullopt;
}

std::optional<EventWitness> detect_B(const SourceSet& x, unsigned k) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    const OccIndex idx = build_index(x, k);
    for (unsigned i = 1; i <= x.size(); ++i) {
        for (unsigned a = 1; a <= np; ++a) {
            const auto& la = idx.at(x.source(i).kmer_at(a, k));
            if (la.size() < 2) continue;
            for (unsigned b = a; b <= std::min(a + k - 1, np); ++b) {
                const auto& lb = idx.at(x.source(i).kmer_at(b, k));
                for (const auto& [j, c] : la) {
                    if (j == i && c == a) continue;
                    for (const auto& [l, d] : lb) {
                        if (l == i && d == b) continue;
                        if (j != l || static_cast<long>(d) - c != static_cast<long>(b) - a)
                            return EventWitness{EventKind::B, i, j, l, a, b, c, d};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<EventWitness> detect_C(const SourceSet& x, unsigned k) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    const OccIndex idx = build_index(x, k);
    for (unsigned i = 1; i <= x.size(); ++i) {
        for (unsigned a : {1u, np}) {
            const auto& occ = idx.at(x.source(i).kmer_at(a, k));
            for (const auto& [j, c] : occ) {
                if (j == i && c == a) continue;
                return EventWitness{EventKind::C, i, j, 0, a, 0, c, 0};
            }
            if (np == 1) break; // both boundaries are the same window
        }
    }
    return std::nullopt;
}

std::optional<EventWitness> detect_D(const SourceSet& x, unsigned k) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    for (unsigned i = 1; i <= x.size(); ++i)
        for (unsigned j = i + 1; j <= x.size(); ++j)
            for (unsigned a = 1; a <= np; ++a)
                if (x.source(i).kmer_at(a, k) == x.source(j).kmer_at(a, k))
                    return EventWitness{EventKind::D, i, j, 0, a, 0, 0, 0};
    return std::nullopt;
}

std::optional<EventWitness> detect_H(const SourceSet& x, unsigned k) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    for (unsigned i = 1; i <= x.size(); ++i) {
        for (unsigned j = i + 1; j <= x.size(); ++j) {
            std::unordered_map<std::uint64_t, std::vector<unsigned>> pos_j;
            pos_j.reserve(np);
            for (unsigned c = 1; c <= np; ++c)
                pos_j[x.source(j).kmer_at(c, k)].push_back(c);
            // matches grouped by gap c-a; two matches with one gap give H
            std::unordered_map<long, std::pair<Occ, Occ>> by_gap; // gap -> first two (a,c)
            bool found = false;
            EventWitness best{};
            for (unsigned a = 1; a <= np; ++a) {
                auto it = pos_j.find(x.source(i).kmer_at(a, k));
                if (it == pos_j.end()) continue;
                for (unsigned c : it->second) {
                    const long g = static_cast<long>(c) - a;
                    auto [slot, fresh] = by_gap.try_emplace(g, Occ{a, c}, Occ{0, 0});
                    if (!fresh && slot->second.second.first == 0)
                        slot->second.second = Occ{a, c};
                }
            }
            for (const auto& [g, two] : by_gap) {
                if (two.second.first == 0) continue;
                EventWitness w{EventKind::H, i, j, 0,
                               two.first.first, two.second.first, two.first.second, 0};
                if (!found || std::tuple(w.a, w.b, w.c) < std::tuple(best.a, best.b, best.c)) {
                    best = w;
                    found = true;
                }
            }
            if (found) return best;
        }
    }
    return std::nullopt;
}

std::optional<EventWitness> detect(EventKind kind, const SourceSet& x, unsigned k) {
    switch (kind) {
        case EventKind::A: return detect_A(x, k);
        case EventKind::B: return detect_B(x, k);
        case EventKind::C: return detect_C(x, k);
        case EventKind::D: return detect_D(x, k);
        case EventKind::H: return detect_H(x, k);
    }
    return std::nullopt;
}

std::uint64_t count_A(const SourceSet& x, unsigned k) {
    require_k(x, k);
    std::uint64_t total = 0;
    for (unsigned i = 1; i <= x.size(); ++i) {
        std::unordered_map<std::uint64_t, std::uint64_t> cnt;
        for (unsigned a = 1; a + k - 1 <= x.n(); ++a)
            ++cnt[x.source(i).kmer_at(a, k)];
        for (const auto& [v, c] : cnt) total += c * (c - 1) / 2;
    }
    return total;
}

std::uint64_t count_B(const SourceSet& x, unsigned k) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    const OccIndex idx = build_index(x, k);
    std::uint64_t total = 0;
    for (unsigned i = 1; i <= x.size(); ++i)
        for (unsigned a = 1; a <= np; ++a) {
            const auto& la = idx.at(x.source(i).kmer_at(a, k));
            for (unsigned b = a; b <= std::min(a + k - 1, np); ++b) {
                const auto& lb = idx.at(x.source(i).kmer_at(b, k));
                for (const auto& [j, c] : la) {
                    if (j == i && c == a) continue;
                    for (const auto& [l, d] : lb) {
                        if (l == i && d == b) continue;
                        if (j != l || static_cast<long>(d) - c != static_cast<long>(b) - a)
                            ++total;
                    }
                }
            }
        }
    return total;
}

std::uint64_t count_C(const SourceSet& x, unsigned k) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    const OccIndex idx = build_index(x, k);
    std::uint64_t total = 0;
    for (unsigned i = 1; i <= x.size(); ++i)
        for (unsigned a : {1u, np}) {
            total += idx.at(x.source(i).kmer_at(a, k)).size() - 1;
            if (np == 1) break;
        }
    return total;
}

std::uint64_t count_D(const SourceSet& x, unsigned k) {
    require_k(x, k);
    std::uint64_t total = 0;
    for (unsigned i = 1; i <= x.size(); ++i)
        for (unsigned j = i + 1; j <= x.size(); ++j)
            for (unsigned a = 1; a + k - 1 <= x.n(); ++a)
                total += x.source(i).kmer_at(a, k) == x.source(j).kmer_at(a, k);
    return total;
}

std::uint64_t count_H(const SourceSet& x, unsigned k) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    std::uint64_t total = 0;
    for (unsigned i = 1; i <= x.size(); ++i)
        for (unsigned j = i + 1; j <= x.size(); ++j) {
            std::unordered_map<std::uint64_t, std::vector<unsigned>> pos_j;
            for (unsigned c = 1; c <= np; ++c)
                pos_j[x.source(j).kmer_at(c, k)].push_back(c);
            std::unordered_map<long, std::uint64_t> gap_count;
            for (unsigned a = 1; a <= np; ++a) {
                auto it = pos_j.find(x.source(i).kmer_at(a, k));
                if (it == pos_j.end()) continue;
                for (unsigned c : it->second) ++gap_count[static_cast<long>(c) - a];
            }
            for (const auto& [g, c] : gap_count) total += c * (c - 1) / 2;
        }
    return total;
}

bool validate_witness(const SourceSet& x, unsigned k, const EventWitness& w) {
    require_k(x, k);
    const unsigned np = windows(x, k);
    const unsigned m = static_cast<unsigned>(x.size());
    auto in_range = [&](unsigned i, unsigned a) {
        return i >= 1 && i <= m && a >= 1 && a <= np;
    };
    auto win = [&](unsigned i, unsigned a) { return x.source(i).kmer_at(a, k); };
    switch (w.kind) {
        case EventKind::A:
            return in_range(w.i, w.a) && in_range(w.i, w.b) && w.a < w.b &&
                   win(w.i, w.a) == win(w.i, w.b);
        case EventKind::B:
            return in_range(w.i, w.a) && in_range(w.i, w.b) &&
                   in_range(w.j, w.c) && in_range(w.l, w.d) &&
                   w.a <= w.b && w.b - w.a < k &&
                   !(w.j == w.i && w.c == w.a) && !(w.l == w.i && w.d == w.b) &&
                   (w.j != w.l ||
                    static_cast<long>(w.d) - w.c != static_cast<long>(w.b) - w.a) &&
                   win(w.i, w.a) == win(w.j, w.c) && win(w.i, w.b) == win(w.l, w.d);
        case EventKind::C:
            return in_range(w.i, w.a) && in_range(w.j, w.c) &&
                   (w.a == 1 || w.a == np) && !(w.j == w.i && w.c == w.a) &&
                   win(w.i, w.a) == win(w.j, w.c);
        case EventKind::D:
            return in_range(w.i, w.a) && in_range(w.j, w.a) && w.i != w.j &&
                   win(w.i, w.a) == win(w.j, w.a);
        case EventKind::H:
            return in_range(w.i, w.a) && in_range(w.i, w.b) && w.i != w.j &&
                   w.a < w.b && in_range(w.j, w.c) &&
                   in_range(w.j, w.c + w.b - w.a) &&
                   win(w.i, w.a) == win(w.j, w.c) &&
                   win(w.i, w.b) == win(w.j, w.c + w.b - w.a);
    }
    return false;
}

bool has_repeated_kmer(const SourceSet& x, unsigned k) {
    require_k(x, k);
    std::unordered_map<std::uint64_t, char> seen;
    seen.reserve(x.size() * (x.n() - k + 1));
    for (const auto& s : x.sources())
        for (unsigned a = 1; a + k - 1 <= x.n(); ++a)
            if (!seen.emplace(s.kmer_at(a, k), 0).second) return true;
    return false;
}

} // namespace krec
