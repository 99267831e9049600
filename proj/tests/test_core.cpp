#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "krec/core.hpp"
#include "krec/rng.hpp"

using namespace krec;

TEST_CASE("splitmix64 matches the reference stream") {
    // Reference outputs of the canonical SplitMix64 algorithm.
    SplitMix64 g0(0);
    CHECK(g0.next() == 0xe220a8397b1dcdafULL);
    CHECK(g0.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(g0.next() == 0x06c45d188009454fULL);

    SplitMix64 g1(0x123456789abcdefULL);
    CHECK(g1.next() == 0x157a3807a48faa9dULL);
    CHECK(g1.next() == 0xd573529b34a1d093ULL);
}

TEST_CASE("derive_seed produces stable, distinct child seeds") {
    CHECK(derive_seed(42, 0) == derive_seed(42, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("bit sequence round trip and accessors") {
    const std::string s = "0110100110010110";
    BitSequence x = BitSequence::from_string(s);
    CHECK(x.length() == s.size());
    CHECK(x.to_string() == s);
    for (std::size_t a = 1; a <= s.size(); ++a) CHECK(x.bit(a) == (s[a - 1] == '1'));

    x.set_bit(1, true);
    x.set_bit(16, false);
    CHECK(x.to_string() == "1110100110010110");

    CHECK_THROWS_AS(BitSequence::from_string("01x"), std::invalid_argument);
    CHECK_THROWS_AS(x.bit(0), std::invalid_argument);
    CHECK_THROWS_AS(x.bit(17), std::invalid_argument);
}

TEST_CASE("kmer_at agrees with string slicing across word boundaries") {
    SplitMix64 g(7);
    std::string s;
    for (int i = 0; i < 150; ++i) s += (g.next() & 1) ? '1' : '0';
    BitSequence x = BitSequence::from_string(s);
    for (unsigned k : {1u, 2u, 7u, 31u, 32u, 33u, 63u, 64u}) {
        for (std::size_t a = 1; a + k - 1 <= s.size(); ++a) {
            std::uint64_t want = 0;
            for (unsigned j = 0; j < k; ++j)
                want = (want << 1) | (s[a - 1 + j] == '1' ? 1u : 0u);
            CAPTURE(k);
            CAPTURE(a);
            REQUIRE(x.kmer_at(a, k) == want);
        }
    }
    CHECK_THROWS_AS(x.kmer_at(150, 2), std::invalid_argument);
    CHECK_THROWS_AS(x.kmer_at(1, 65), std::invalid_argument);
}

TEST_CASE("substr is 1-based inclusive and append concatenates") {
    BitSequence x = BitSequence::from_string("010110");
    CHECK(x.substr(2, 4).to_string() == "101");
    CHECK(x.substr(1, 6).to_string() == "010110");
    CHECK(x.substr(3, 2).length() == 0); // empty range allowed
    CHECK_THROWS_AS(x.substr(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(x.substr(2, 7), std::invalid_argument);

    BitSequence y = x.substr(1, 2);
    y.append(x.substr(5, 6));
    CHECK(y.to_string() == "0110");
}

TEST_CASE("bit sequences order like their strings") {
    std::vector<std::string> ss = {"1", "0", "01", "10", "0011", "0100",
                                   "00110", "1111111111", "0000000001"};
    std::vector<BitSequence> xs;
    for (const auto& s : ss) xs.push_back(BitSequence::from_string(s));
    std::sort(ss.begin(), ss.end());
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i < ss.size(); ++i) CHECK(xs[i].to_string() == ss[i]);
}

TEST_CASE("packed word render and parse") {
    CHECK(word_to_string(0b010, 3) == "010");
    CHECK(word_to_string(0, 4) == "0000");
    CHECK(word_from_string("010") == 0b010);
    CHECK(word_from_string("1111") == 0b1111);
    CHECK_THROWS_AS(word_from_string("01a"), std::invalid_argument);
}

TEST_CASE("make_params validates dimensions") {
    Params p = make_params(64, 4, 8);
    CHECK(p.n == 64);
    CHECK(p.m == 4);
    CHECK(p.k == 8);
    CHECK(p.n_prime() == 57);
    CHECK(!p.alpha.has_value());

    CHECK_THROWS_AS(make_params(3, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_params(64, 0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_params(64, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_params(64, 4, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_params(8, 1, 8), std::invalid_argument); // k+1 > n
}

TEST_CASE("derive_params rounds and clamps the scaling map") {
    Params p = derive_params(64, 0.5, 3.5);
    CHECK(p.m == 8);
    CHECK(p.k == 21);
    CHECK(p.alpha == 0.5);
    CHECK(p.beta == 3.5);

    p = derive_params(512, 1.0 / 3.0, 2.0);
    CHECK(p.m == 8);
    CHECK(p.k == 18);

    p = derive_params(4, 0.0, 0.6); // raw k rounds to 1, clamps up to 2
    CHECK(p.m == 1);
    CHECK(p.k == 2);

    p = derive_params(8, 0.0, 10.0); // raw k = 30 clamps down to n-1
    CHECK(p.k == 7);

    // clamp keeps k <= n-1 but the word-pack cap still applies
    CHECK_THROWS_AS(derive_params(4096, 0.0, 6.0), std::invalid_argument);
    CHECK_THROWS_AS(derive_params(3, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("source set shape and text forms") {
    SourceSet x = SourceSet::from_text("0101\r\n1100\n\n");
    CHECK(x.size() == 2);
    CHECK(x.n() == 4);
    CHECK(x.source(1).to_string() == "0101");
    CHECK(x.source(2).to_string() == "1100");
    CHECK(x.to_text() == "0101\n1100\n");
    CHECK_THROWS_AS(x.source(0), std::invalid_argument);
    CHECK_THROWS_AS(x.source(3), std::invalid_argument);

    CHECK_THROWS_AS(SourceSet::from_text("01\n011\n"), std::invalid_argument);
    CHECK_THROWS_AS(SourceSet::from_text(""), std::invalid_argument);

    SourceSet y = SourceSet::from_text("1100\n0101\n");
    CHECK(x.multiset_equal(y));
    CHECK(y.multiset_equal(x));
    SourceSet z = SourceSet::from_text("1100\n0111\n");
    CHECK(!x.multiset_equal(z));
}

TEST_CASE("kmer set is a sorted unique set with text round trip") {
    KmerSet s(2, {0b101, 0b010, 0b101, 0b011});
    CHECK(s.size() == 3);
    CHECK(s.k() == 2);
    CHECK(s.values()[0] == 0b010);
    CHECK(s.values()[1] == 0b011);
    CHECK(s.values()[2] == 0b101);
    CHECK(s.contains(0b011));
    CHECK(!s.contains(0b110));

    CHECK(s.to_text() == "010\n011\n101\n");
    CHECK(KmerSet::from_text("101\n010\n011\n") == s);
    CHECK_THROWS_AS(KmerSet::from_text("01\n10\n"), std::invalid_argument); // k would be 1
    CHECK_THROWS_AS(KmerSet::from_text("010\n0110\n"), std::invalid_argument);
}

TEST_CASE("extract_kmer_set collects the union of windows") {
    SourceSet x = SourceSet::from_text("0101\n");
    KmerSet y = extract_kmer_set(x, 2);
    CHECK(y.to_text() == "010\n101\n");

    SourceSet x2 = SourceSet::from_text("01011\n10110\n");
    KmerSet y2 = extract_kmer_set(x2, 2);
    CHECK(y2.to_text() == "010\n011\n101\n110\n");
}

TEST_CASE("generate_sources is reproducible and per-sequence seeded") {
    Params p = make_params(64, 3, 8);
    SourceSet a = generate_sources(p, 123);
    SourceSet b = generate_sources(p, 123);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 1; i <= 3; ++i) CHECK(a.source(i) == b.source(i));
    CHECK(a.source(1).length() == 64);

    // sequence i depends only on derive_seed(seed, i), not on m
    Params p2 = make_params(64, 2, 8);
    SourceSet c = generate_sources(p2, 123);
    CHECK(c.source(1) == a.source(1));
    CHECK(c.source(2) == a.source(2));

    SourceSet d = generate_sources(p, 124);
    CHECK(d.source(1) != a.source(1));
}
