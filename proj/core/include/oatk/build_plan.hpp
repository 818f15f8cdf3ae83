#pragma once

#include <cstdint>

#include "oatk/codes.hpp"

namespace oatk {

/// How an orthogonal array came to be.
enum class OaProvenance : std::uint8_t {
    Rs,         ///< polynomial-evaluation code plan
    RandomCode, ///< sampled code plan
    Bush,       ///< prime-power polynomial construction
    Product,    ///< entry-wise product of two arrays
    Imported,   ///< read from a file
};

/// Everything the array builder needs: target alphabet [n], m columns,
/// strength t, a code over F_q with dual distance > t, and a far vector
/// with agreement bound tau. Row count comes out as n^tau * q^dim.
struct BuildPlan {
    std::uint64_t n = 0;
    std::uint32_t m = 0;
    std::uint32_t t = 0;
    std::uint64_t q = 0;
    std::uint32_t tau = 0;
    LinearCode code;
    FarVector far;
    OaProvenance provenance = OaProvenance::Rs;
};

/// Checks the plan invariants: q prime, q == 1 (mod n), code and far vector
/// of length m, dual distance >= t + 1 and the far property (analytic
/// declarations are trusted; undeclared ones are computed). Throws
/// ConfigError on violation.
void validate_plan(const BuildPlan& plan);

struct RsPlanOptions {
    std::uint64_t nu_num = 6;
    std::uint64_t nu_den = 1;
};

/// Deterministic plan for arbitrary n >= 2, 2 <= t <= m: picks the smallest
/// prime q == 1 (mod progression_modulus(n, m)) above the modulus, pairs
/// rs_code(q, m, t - 1) with rs_far_vector(q, m, t); tau = t, dim = t.
BuildPlan plan_rs(std::uint64_t n, std::uint32_t m, std::uint32_t t,
                  const RsPlanOptions& opts = {});

struct RandomPlanOptions {
    std::uint64_t p_override = 0; ///< nonzero: use this prime (must be == 1 mod n)
    std::uint64_t attempt_budget = 1000;
};

/// Sampled plan: prime q == 1 (mod n) above (m*e/t)^3 unless overridden,
/// code from gv_random_code(m, t, q, 2t, ...), far vector with agreement
/// bound 3t; tau = 3t, dim <= 2t.
BuildPlan plan_random(std::uint64_t n, std::uint32_t m, std::uint32_t t,
                      std::uint64_t seed, const RandomPlanOptions& opts = {});

} // namespace oatk
