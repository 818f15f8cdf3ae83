#pragma once

#include <cstdint>

namespace oatk {

/// splitmix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent sub-seed from (seed, salt).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
    return mix64(seed ^ mix64(salt + 0xd6e8feb86659fd93ULL));
}

/// Counter-mode splitmix64 stream: draw i depends only on (seed, i), so the
/// stream position serializes as a single integer and restores exactly.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) noexcept
        : seed_(seed), counter_(counter) {}

    std::uint64_t next() noexcept {
        ++counter_;
        return mix64(seed_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on [0, bound) for bound >= 1, exact via rejection sampling.
    std::uint64_t below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }
    void set_counter(std::uint64_t c) noexcept { counter_ = c; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace oatk
