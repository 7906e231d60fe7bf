#pragma once

// Seeded randomness with a fully documented draw procedure so simulated
// judges can be reproduced from the seed alone. The generator is
// std::mt19937_64 (whose algorithm the C++ standard pins down exactly);
// bounded draws use unbiased rejection sampling on its raw 64-bit output
// instead of std::uniform_int_distribution, whose mapping is
// implementation-defined.

#include <cstdint>
#include <random>
#include <vector>

namespace sparsealign {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform draw from {0, ..., n-1}. Rejection sampling: raw 64-bit words
    // are discarded while they fall in the biased tail 2^64 - (2^64 mod n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (0ULL - n) % n; // 2^64 mod n
        while (true) {
            const std::uint64_t r = engine_();
            if (r >= limit) return r % n;
        }
    }

    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // +1 or -1 with equal probability.
    int sign() { return below(2) == 1 ? 1 : -1; }

    // First `count` entries of a partial Fisher-Yates shuffle of {0..n-1},
    // returned in ascending order.
    std::vector<std::size_t> pick(std::size_t count, std::size_t n) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i < count && i < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(count < n ? count : n);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

    static constexpr const char* algorithm() { return "mt19937_64+rejection"; }

private:
    std::mt19937_64 engine_;
};

} // namespace sparsealign
