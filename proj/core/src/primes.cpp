#include "oatk/primes.hpp"

#include <numeric>
#include <string>

#include "oatk/errors.hpp"
#include "oatk/rng.hpp"

namespace oatk {

namespace {

constexpr std::uint64_t kFieldLimit = (std::uint64_t{1} << 62) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % mod);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t acc = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) acc = mulmod(acc, base, mod);
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return acc;
}

// floor(base^(num/den)) saturated at kFieldLimit: the largest r with
// r^den <= base^num.
std::uint64_t rational_pow_floor(std::uint64_t base, std::uint64_t num, std::uint64_t den) {
    const __uint128_t sat = kFieldLimit;
    __uint128_t powv = 1;
    bool saturated = false;
    for (std::uint64_t i = 0; i < num; ++i) {
        if (powv > sat / base) {
            saturated = true;
            break;
        }
        powv *= base;
    }
    if (den == 1) return saturated ? kFieldLimit : static_cast<std::uint64_t>(powv);

    // Binary search on r; compare r^den against base^num in 128 bits with
    // overflow treated as "too big".
    auto pow_leq = [&](std::uint64_t r, __uint128_t target) {
        __uint128_t acc = 1;
        for (std::uint64_t i = 0; i < den; ++i) {
            if (r != 0 && acc > target / r) return false;
            acc *= r;
        }
        return acc <= target;
    };
    if (saturated) {
        // base^num overflowed 62 bits; the den-th root may still be small.
        __uint128_t full = 1;
        bool overflow128 = false;
        for (std::uint64_t i = 0; i < num; ++i) {
            if (full > (~__uint128_t{0}) / base) {
                overflow128 = true;
                break;
            }
            full *= base;
        }
        if (overflow128) return kFieldLimit;
        powv = full;
    }
    std::uint64_t lo = 0, hi = kFieldLimit;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (pow_leq(mid, powv))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

} // namespace

bool is_prime(std::uint64_t x) noexcept {
    if (x < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (x == p) return true;
        if (x % p == 0) return false;
    }
    std::uint64_t d = x - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Witness set deterministic for every 64-bit input.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t y = powmod(a, d, x);
        if (y == 1 || y == x - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            y = mulmod(y, y, x);
            if (y == x - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t progression_modulus(std::uint64_t n, std::uint64_t m) {
    if (n < 2) throw ConfigError("progression_modulus: alphabet size must be >= 2");
    if (m < 1) throw ConfigError("progression_modulus: domain size must be >= 1");
    return n * ((m + n - 1) / n);
}

std::uint64_t prime_search_cap(const PrimeSearchConfig& cfg) {
    if (cfg.max_override) return cfg.max_override;
    if (cfg.nu_den == 0 || cfg.nu_num < cfg.nu_den)
        throw ConfigError("prime search: exponent cap must be a rational >= 1");
    return rational_pow_floor(cfg.modulus, cfg.nu_num, cfg.nu_den);
}

std::uint64_t find_prime_in_progression(const PrimeSearchConfig& cfg) {
    if (cfg.modulus < 2) throw ConfigError("prime search: modulus must be >= 2");
    if (std::gcd(cfg.residue % cfg.modulus, cfg.modulus) != 1)
        throw ConfigError("prime search: residue must be coprime to the modulus");
    const std::uint64_t cap = prime_search_cap(cfg);
    if (cap <= cfg.min_exclusive)
        throw SearchExhaustedError("prime search: empty interval (cap " + std::to_string(cap) +
                                   " <= min " + std::to_string(cfg.min_exclusive) + ")");

    const std::uint64_t a = cfg.residue % cfg.modulus;
    // Smallest candidate == a (mod modulus) strictly above min_exclusive.
    std::uint64_t first = (cfg.min_exclusive / cfg.modulus) * cfg.modulus + a;
    if (first <= cfg.min_exclusive) first += cfg.modulus;
    if (first > cap)
        throw SearchExhaustedError("prime search: no candidate in the interval");
    const std::uint64_t count = (cap - first) / cfg.modulus + 1;

    if (cfg.mode == PrimeSearchConfig::Mode::Scan) {
        for (std::uint64_t c = first; c <= cap; c += cfg.modulus)
            if (is_prime(c)) return c;
        throw SearchExhaustedError("prime search: no prime == " + std::to_string(a) + " (mod " +
                                   std::to_string(cfg.modulus) + ") in (" +
                                   std::to_string(cfg.min_exclusive) + ", " + std::to_string(cap) +
                                   "]");
    }

    CounterRng rng(cfg.seed);
    for (std::uint64_t i = 0; i < cfg.sample_budget; ++i) {
        const std::uint64_t c = first + rng.below(count) * cfg.modulus;
        if (is_prime(c)) return c;
    }
    throw SearchExhaustedError("prime search: sampling budget (" +
                               std::to_string(cfg.sample_budget) + ") exhausted");
}

std::uint64_t find_construction_prime(std::uint64_t n, std::uint64_t m,
                                      const ConstructionPrimeOptions& opts) {
    const std::uint64_t eta = progression_modulus(n, m);
    PrimeSearchConfig cfg;
    cfg.modulus = eta;
    cfg.residue = 1;
    cfg.min_exclusive = eta;
    cfg.nu_num = opts.nu_num;
    cfg.nu_den = opts.nu_den;
    cfg.mode = opts.mode;
    cfg.seed = opts.seed;
    const std::uint64_t p = find_prime_in_progression(cfg);
    if (p % n != 1 || p <= m)
        throw std::logic_error("find_construction_prime: progression guarantee violated");
    return p;
}

} // namespace oatk
