#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "tracelab/errors.hpp"

namespace tracelab {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Weyl increment used both inside splitmix64 and to derive stream sub-seeds.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

namespace detail {

/// splitmix64 output mixer: full avalanche on the state word.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

/// splitmix64: tiny, fast, platform-independent.  Good enough statistically
/// for sampling experiments and, unlike std::mt19937_64 + distributions,
/// fully pinned down by this header (libstdc++ distributions are not
/// portable across implementations).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return detail::mix64(state_ += kGoldenGamma); }

    /// Unbiased integer in [0, bound) via Lemire's multiply-with-rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("below: bound must be positive");
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Sub-seed for the j-th independent stream of a master seed.  The combined
/// word must go through the output mixer: without it every derived state
/// sits on the same Weyl lattice (seed ^ jg + tg), and streams with nearby j
/// degenerate into shifted windows of one master sequence.  Identical
/// (seed, j) pairs always yield the same stream, which is what makes
/// per-trial parallelism deterministic regardless of the thread partition.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t j) {
    return detail::mix64(seed ^ ((j + 1) * kGoldenGamma));
}

/// Uniform random size-x subsets of {0..n-1} by partial Fisher-Yates.  The
/// identity array is kept allocated between draws and restored by undoing the
/// swaps, so a draw costs O(x) regardless of n.
class SubsetSampler {
public:
    explicit SubsetSampler(std::uint32_t n) : perm_(n) {
        for (std::uint32_t v = 0; v < n; ++v) perm_[v] = v;
    }

    std::uint32_t universe() const { return static_cast<std::uint32_t>(perm_.size()); }

    /// Writes the sampled subset, sorted ascending, into `out`.
    void sample(SplitMix64& rng, std::uint32_t size, std::vector<std::uint32_t>& out) {
        std::uint32_t n = universe();
        if (size > n) throw std::invalid_argument("sample: subset size exceeds universe");
        out.clear();
        out.reserve(size);
        touched_.clear();
        for (std::uint32_t i = 0; i < size; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(rng.below(n - i));
            if (j != i) {
                std::swap(perm_[i], perm_[j]);
                touched_.push_back({i, j});
            }
            out.push_back(perm_[i]);
        }
        for (auto it = touched_.rbegin(); it != touched_.rend(); ++it)
            std::swap(perm_[it->first], perm_[it->second]);
        std::sort(out.begin(), out.end());
    }

private:
    std::vector<std::uint32_t> perm_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> touched_;
};

} // namespace tracelab
