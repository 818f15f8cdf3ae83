#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <vector>

#include "oatk/primes.hpp"
#include "oatk/rng.hpp"

namespace oatk {

/// How replacement values (inputs x with h(x) = x^t mod p) are produced.
enum class ReplacementMode : std::uint8_t {
    LazyCache, ///< fresh uniform draw from the function's stream, cached
    Derived,   ///< derived deterministically from (seed, x); order-independent
};

struct EvalStats {
    std::uint64_t mul_adds = 0;          ///< field multiply-add operations
    std::uint64_t replacement_draws = 0; ///< uniform draws for bad values
};

/// A member of a strongly t-universal family [m] -> [n]: a uniformly drawn
/// polynomial of degree < t over F_p (p == 1 mod progression_modulus(n, m)),
/// folded onto [n] away from the per-input excluded value x^t mod p; inputs
/// that hit the excluded value get a uniform replacement. At most t inputs
/// can ever need replacement, so the store stays within t entries.
class HashFunction {
public:
    struct CreateOptions {
        ReplacementMode mode = ReplacementMode::LazyCache;
        PrimeSearchConfig::Mode prime_mode = PrimeSearchConfig::Mode::Scan;
        std::uint64_t nu_num = 6;
        std::uint64_t nu_den = 1;
    };

    /// Draws a fresh member: finds the prime, then t uniform coefficients
    /// from the seeded stream. Requires n >= 2 and 1 <= t <= m.
    static HashFunction create(std::uint64_t n, std::uint64_t m, std::uint32_t t,
                               std::uint64_t seed, const CreateOptions& opts);
    static HashFunction create(std::uint64_t n, std::uint64_t m, std::uint32_t t,
                               std::uint64_t seed) {
        return create(n, m, t, seed, CreateOptions{});
    }

    /// Rebuilds an exact state (deserialization, pinned test instances).
    /// Validates every invariant; throws ConfigError.
    static HashFunction from_parts(std::uint64_t n, std::uint64_t m, std::uint32_t t,
                                   std::uint64_t p, std::uint64_t seed,
                                   std::vector<std::uint64_t> coefficients,
                                   ReplacementMode mode, std::uint64_t stream_counter,
                                   std::vector<std::pair<std::uint64_t, std::uint64_t>> replacements);

    /// h(x) for x in [1, m]; exactly t field multiply-adds plus O(1) work
    /// for inputs outside the replacement store. LazyCache evaluation may
    /// mutate the store; Derived evaluation never does.
    std::uint64_t eval(std::uint64_t x, EvalStats* stats = nullptr);

    std::uint64_t alphabet() const noexcept { return n_; }
    std::uint64_t domain() const noexcept { return m_; }
    std::uint32_t strength() const noexcept { return t_; }
    std::uint64_t prime() const noexcept { return p_; }
    std::uint64_t seed() const noexcept { return seed_; }
    ReplacementMode mode() const noexcept { return mode_; }
    std::uint64_t stream_counter() const noexcept { return rng_.counter(); }
    std::span<const std::uint64_t> coefficients() const noexcept { return coeffs_; }
    std::span<const std::pair<std::uint64_t, std::uint64_t>> replacements() const noexcept {
        return store_;
    }

    /// Canonical byte encoding: magic/version, mode byte, then varints of
    /// n, m, t, p, fixed 8-byte seed, coefficients, store entries and the
    /// stream counter. Round-trips exactly.
    std::vector<std::uint8_t> serialize() const;
    static HashFunction deserialize(std::span<const std::uint8_t> bytes);

private:
    HashFunction() : rng_(0) {}

    std::uint64_t n_ = 0;
    std::uint64_t m_ = 0;
    std::uint32_t t_ = 0;
    std::uint64_t p_ = 0;
    std::uint64_t seed_ = 0;
    ReplacementMode mode_ = ReplacementMode::LazyCache;
    std::vector<std::uint64_t> coeffs_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> store_; ///< sorted by input
    CounterRng rng_;
};

/// Mutual-exclusion gate for concurrent LazyCache evaluation.
class SynchronizedHash {
public:
    explicit SynchronizedHash(HashFunction fn) : fn_(std::move(fn)) {}

    std::uint64_t eval(std::uint64_t x) {
        std::lock_guard<std::mutex> lock(mu_);
        return fn_.eval(x);
    }

    HashFunction snapshot() {
        std::lock_guard<std::mutex> lock(mu_);
        return fn_;
    }

private:
    std::mutex mu_;
    HashFunction fn_;
};

} // namespace oatk
