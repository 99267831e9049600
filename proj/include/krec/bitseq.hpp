#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace krec {

// Packed binary sequence. Bit j (0-based internally) lives in word j/64 at
// bit position 63-j%64, i.e. MSB-first, so whole-word comparison is
// lexicographic comparison of the string. Unused tail bits are kept zero.
//
// The public position argument `a` is 1-based throughout, matching the
// indexing used everywhere else in this library.
class BitSequence {
public:
    BitSequence() = default;

    explicit BitSequence(std::size_t n) : words_((n + 63) / 64, 0), len_(n) {}

    static BitSequence from_string(std::string_view s) {
        BitSequence x(s.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] == '1') {
                x.words_[j / 64] |= word_bit(j);
            } else if (s[j] != '0') {
                throw std::invalid_argument("BitSequence: expected '0' or '1'");
            }
        }
        return x;
    }

    std::string to_string() const {
        std::string s(len_, '0');
        for (std::size_t j = 0; j < len_; ++j) {
            if (words_[j / 64] & word_bit(j)) s[j] = '1';
        }
        return s;
    }

    std::size_t length() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool bit(std::size_t a) const {
        check_pos(a);
        return (words_[(a - 1) / 64] & word_bit(a - 1)) != 0;
    }

    void set_bit(std::size_t a, bool v) {
        check_pos(a);
        if (v)
            words_[(a - 1) / 64] |= word_bit(a - 1);
        else
            words_[(a - 1) / 64] &= ~word_bit(a - 1);
    }

    void append_bit(bool v) {
        if (len_ % 64 == 0) words_.push_back(0);
        ++len_;
        if (v) words_[(len_ - 1) / 64] |= word_bit(len_ - 1);
    }

    void append(const BitSequence& o) {
        for (std::size_t a = 1; a <= o.len_; ++a) append_bit(o.bit(a));
    }

    /// k-mer starting at position a (1-based), packed MSB-first into the low
    /// k bits of the result. Requires 1 <= k <= 64 and a+k-1 <= length().
    std::uint64_t kmer_at(std::size_t a, unsigned k) const {
        if (k < 1 || k > 64) throw std::invalid_argument("kmer_at: k out of range");
        if (a < 1 || a + k - 1 > len_)
            throw std::invalid_argument("kmer_at: window exceeds sequence");
        const std::size_t j0 = a - 1;
        const std::size_t w = j0 / 64;
        const unsigned off = static_cast<unsigned>(j0 % 64);
        std::uint64_t hi = words_[w] << off;
        if (off != 0 && w + 1 < words_.size()) hi |= words_[w + 1] >> (64 - off);
        return (k == 64) ? hi : hi >> (64 - k);
    }

    /// Substring x[a:b], inclusive 1-based bounds.
    BitSequence substr(std::size_t a, std::size_t b) const {
        if (a < 1 || b > len_ || a > b + 1)
            throw std::invalid_argument("substr: bad range");
        BitSequence r(b + 1 - a);
        for (std::size_t j = 0; j < r.len_; ++j)
            if (bit(a + j)) r.words_[j / 64] |= word_bit(j);
        return r;
    }

    bool operator==(const BitSequence& o) const {
        return len_ == o.len_ && words_ == o.words_;
    }

    // Lexicographic; a proper prefix sorts before its extensions.
    std::strong_ordering operator<=>(const BitSequence& o) const {
        const std::size_t nw = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < nw; ++i) {
            if (words_[i] != o.words_[i])
                return words_[i] < o.words_[i] ? std::strong_ordering::less
                                               : std::strong_ordering::greater;
        }
        return len_ <=> o.len_;
    }

private:
    static std::uint64_t word_bit(std::size_t j) {
        return 1ULL << (63 - j % 64);
    }

    void check_pos(std::size_t a) const {
        if (a < 1 || a > len_) throw std::invalid_argument("BitSequence: position out of range");
    }

    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

} // namespace krec
