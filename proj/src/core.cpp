#include "krec/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "krec/rng.hpp"

namespace krec {

Params make_params(unsigned n, unsigned m, unsigned k) {
    if (n < 4) throw std::invalid_argument("params: n must be >= 4");
    if (m < 1) throw std::invalid_argument("params: m must be >= 1");
    if (k < 2) throw std::invalid_argument("params: k must be >= 2");
    if (k > 63) throw std::invalid_argument("params: k must be <= 63");
    if (k + 1 > n) throw std::invalid_argument("params: k+1 must be <= n");
    return Params{n, m, k, std::nullopt, std::nullopt};
}

Params derive_params(unsigned n, double alpha, double beta) {
    if (n < 4) throw std::invalid_argument("params: n must be >= 4");
    const double mr = std::pow(static_cast<double>(n), alpha);
    const unsigned m = static_cast<unsigned>(std::max(1.0, std::round(mr)));
    const double kr = beta * std::log2(static_cast<double>(n));
    long kk = std::lround(kr);
    kk = std::clamp<long>(kk, 2, static_cast<long>(n) - 1);
    Params p = make_params(n, m, static_cast<unsigned>(kk));
    p.alpha = alpha;
    p.beta = beta;
    return p;
}

SourceSet::SourceSet(std::vector<BitSequence> sources) : sources_(std::move(sources)) {
    if (sources_.empty()) throw std::invalid_argument("SourceSet: empty");
    n_ = static_cast<unsigned>(sources_[0].length());
    for (const auto& s : sources_)
        if (s.length() != n_) throw std::invalid_argument("SourceSet: unequal lengths");
}

const BitSequence& SourceSet::source(std::size_t i) const {
    if (i < 1 || i > sources_.size())
        throw std::invalid_argument("SourceSet: index out of range");
    return sources_[i - 1];
}

std::vector<BitSequence> SourceSet::sorted() const {
    std::vector<BitSequence> v = sources_;
    std::sort(v.begin(), v.end());
    return v;
}

bool SourceSet::multiset_equal(const SourceSet& o) const {
    return sources_.size() == o.sources_.size() && sorted() == o.sorted();
}

std::string SourceSet::to_text() const {
    std::string out;
    for (const auto& s : sources_) {
        out += s.to_string();
        out += '\n';
    }
    return out;
}

SourceSet SourceSet::from_text(const std::string& s) {
    std::vector<BitSequence> v;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        v.push_back(BitSequence::from_string(line));
    }
    return SourceSet(std::move(v));
}

KmerSet::KmerSet(unsigned k, std::vector<std::uint64_t> values)
    : k_(k), values_(std::move(values)) {
    if (k_ < 1 || k_ > 63) throw std::invalid_argument("KmerSet: k out of range");
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    const std::uint64_t limit = 1ULL << (k_ + 1);
    if (!values_.empty() && values_.back() >= limit)
        throw std::invalid_argument("KmerSet: value wider than k+1 bits");
}

bool KmerSet::contains(std::uint64_t v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
}

std::string KmerSet::to_text() const {
    std::string out;
    for (std::uint64_t v : values_) {
        out += word_to_string(v, k_ + 1);
        out += '\n';
    }
    return out;
}

KmerSet KmerSet::from_text(const std::string& s) {
    std::istringstream in(s);
    std::string line;
    std::vector<std::uint64_t> vals;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (width == 0)
            width = line.size();
        else if (line.size() != width)
            throw std::invalid_argument("KmerSet: mixed word lengths");
        vals.push_back(word_from_string(line));
    }
    if (width < 3) throw std::invalid_argument("KmerSet: need (k+1)-mers with k >= 2");
    return KmerSet(static_cast<unsigned>(width) - 1, std::move(vals));
}

SourceSet generate_sources(const Params& params, std::uint64_t seed) {
    std::vector<BitSequence> v;
    v.reserve(params.m);
    for (unsigned i = 0; i < params.m; ++i) {
        SplitMix64 g(derive_seed(seed, i));
        BitSequence s(params.n);
        std::uint64_t word = 0;
        unsigned have = 0;
        for (unsigned a = 1; a <= params.n; ++a) {
            if (have == 0) {
                word = g.next();
                have = 64;
            }
            s.set_bit(a, (word >> 63) & 1);
            word <<= 1;
            --have;
        }
        v.push_back(std::move(s));
    }
    return SourceSet(std::move(v));
}

KmerSet extract_kmer_set(const SourceSet& x, unsigned k) {
    if (k + 1 > x.n()) throw std::invalid_argument("extract_kmer_set: k+1 exceeds n");
    std::vector<std::uint64_t> vals;
    vals.reserve(x.size() * (x.n() - k));
    for (const auto& s : x.sources())
        for (unsigned a = 1; a + k <= x.n(); ++a) vals.push_back(s.kmer_at(a, k + 1));
    return KmerSet(k, std::move(vals));
}

std::string word_to_string(std::uint64_t v, unsigned w) {
    std::string s(w, '0');
    for (unsigned j = 0; j < w; ++j)
        if ((v >> (w - 1 - j)) & 1) s[j] = '1';
    return s;
}

std::uint64_t word_from_string(std::string_view s) {
    if (s.empty() || s.size() > 64) throw std::invalid_argument("word: bad length");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("word: expected '0' or '1'");
        v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return v;
}

} // namespace krec
