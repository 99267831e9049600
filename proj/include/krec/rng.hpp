#pragma once

#include <cstdint>

namespace krec {

// SplitMix64. Chosen over std::mt19937 so that streams are identical across
// platforms and standard-library versions; generated bits are part of the
// reproducibility contract (golden CSVs, seeded tests).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Derives an independent child seed from (seed, index). Used for per-source,
/// per-cell and per-trial streams so parallel and sequential runs agree.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
    g.next();
    return g.next();
}

} // namespace krec
