#pragma once

#include <cstdint>

namespace oatk {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t x) noexcept;

/// Progression modulus covering an alphabet of size n and a domain of size m:
/// n * ceil(m / n). Divisible by n and within [m, m + n).
std::uint64_t progression_modulus(std::uint64_t n, std::uint64_t m);

struct PrimeSearchConfig {
    enum class Mode { Scan, Sample };

    std::uint64_t modulus = 2;       ///< progression modulus (eta), >= 2
    std::uint64_t residue = 1;       ///< residue class, coprime to modulus
    std::uint64_t min_exclusive = 0; ///< search strictly above this value
    std::uint64_t nu_num = 6;        ///< cap exponent numerator (nu = num/den >= 1)
    std::uint64_t nu_den = 1;
    std::uint64_t max_override = 0;  ///< nonzero: explicit cap instead of modulus^nu
    Mode mode = Mode::Scan;
    std::uint64_t seed = 0;          ///< sampling mode stream seed
    std::uint64_t sample_budget = 100000;
};

/// Upper end of the search interval: floor(modulus^(nu_num/nu_den)), or the
/// explicit override, saturated at 2^62 - 1.
std::uint64_t prime_search_cap(const PrimeSearchConfig& cfg);

/// Finds a prime p with p == residue (mod modulus) and min < p <= cap.
/// Scan mode returns the smallest such prime; sample mode draws uniformly
/// from the candidate set under the config seed. Throws ConfigError on an
/// invalid config and SearchExhaustedError when the interval holds no prime
/// (or the sampling budget runs out).
std::uint64_t find_prime_in_progression(const PrimeSearchConfig& cfg);

struct ConstructionPrimeOptions {
    PrimeSearchConfig::Mode mode = PrimeSearchConfig::Mode::Scan;
    std::uint64_t seed = 0;
    std::uint64_t nu_num = 6;
    std::uint64_t nu_den = 1;
};

/// The prime underlying a (n, m) construction: p == 1 (mod progression_modulus(n, m))
/// with p > progression_modulus(n, m). Always satisfies p == 1 (mod n) and p > m;
/// both are asserted on every call.
std::uint64_t find_construction_prime(std::uint64_t n, std::uint64_t m,
                                      const ConstructionPrimeOptions& opts = {});

} // namespace oatk
