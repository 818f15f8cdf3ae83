#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oatk/field.hpp"

namespace oatk {

/// How a declared code property was established.
enum class Provenance : std::uint8_t {
    Analytic, ///< follows from the construction; trusted, re-verified in tests
    Verified, ///< established by exhaustive computation on this instance
};

/// Linear [m, k] code over the prime field F_p, held as a full-row-rank
/// generator matrix (row-major k x m, canonical entries in [0, p)).
struct LinearCode {
    FieldCtx field;                  ///< prime field (degree 1)
    std::uint32_t length = 0;        ///< m
    std::uint32_t dim = 0;           ///< k
    std::vector<std::uint64_t> gen;  ///< k * m entries

    std::uint32_t declared_dual_distance = 0; ///< declared lower bound; 0 when undeclared
    Provenance dual_provenance = Provenance::Verified;

    std::uint64_t at(std::uint32_t row, std::uint32_t col) const {
        return gen[static_cast<std::size_t>(row) * length + col];
    }

    /// Validates shape, entry ranges and full row rank. Throws ConfigError.
    static LinearCode from_generator(FieldCtx field, std::uint32_t length,
                                     std::vector<std::uint64_t> gen);
};

/// A vector together with an agreement bound: no codeword of the associated
/// code agrees with `values` on more than `agreement_bound` coordinates.
struct FarVector {
    std::vector<std::uint64_t> values;
    std::uint32_t agreement_bound = 0;
    Provenance provenance = Provenance::Verified;
};

/// Polynomial-evaluation code on points 1..m over F_p: rows (j^i) for
/// i = 0..degree_bound, so k = degree_bound + 1 and minimum distance
/// m - degree_bound. Dual distance is declared analytically as
/// degree_bound + 2. Requires m <= p and degree_bound < m.
LinearCode rs_code(std::uint64_t p, std::uint32_t m, std::uint32_t degree_bound);

/// The far vector paired with rs_code(p, m, t - 1): values j^t mod p for
/// j = 1..m, agreement bound t. Requires 2 <= t <= m <= p.
FarVector rs_far_vector(std::uint64_t p, std::uint32_t m, std::uint32_t t);

/// True iff every (d - 1)-subset of generator columns is linearly
/// independent, i.e. the dual code has minimum distance >= d.
bool dual_distance_at_least(const LinearCode& code, std::uint32_t d);

enum class FarCheckMode : std::uint8_t {
    Subset,    ///< consistency of every (bound+1)-point interpolation system
    Enumerate, ///< walk all p^k codewords; cross-validation, p^k <= 10^7
};

/// True iff no codeword agrees with `values` on more than `agreement_bound`
/// coordinates. Vacuously true when agreement_bound >= length.
bool far_from_code(const LinearCode& code, std::span<const std::uint64_t> values,
                   std::uint32_t agreement_bound, FarCheckMode mode = FarCheckMode::Subset);

/// Whether the sampling-success condition
/// 4 * sum_{i=1..t} C(m, i) (p-1)^i <= p^rows holds (exact big-integer
/// comparison). Informational: construction is permitted either way.
bool gv_condition_holds(std::uint32_t m, std::uint32_t t, std::uint64_t p, std::uint32_t rows);

struct RandomCodeResult {
    LinearCode code;
    std::uint64_t attempts = 0;
};

/// Samples uniform rows x m matrices over F_p until every t columns are
/// linearly independent, then returns the row-space code (dimension = rank).
/// Throws SearchExhaustedError past the attempt budget.
RandomCodeResult gv_random_code(std::uint32_t m, std::uint32_t t, std::uint64_t p,
                                std::uint32_t rows, std::uint64_t seed,
                                std::uint64_t attempt_budget = 1000);

struct RandomFarVectorResult {
    FarVector far;
    std::uint64_t attempts = 0;
};

/// Samples uniform vectors until far_from_code(code, b, agreement_bound)
/// holds. Throws SearchExhaustedError past the attempt budget.
RandomFarVectorResult random_far_vector(const LinearCode& code, std::uint32_t agreement_bound,
                                        std::uint64_t seed, std::uint64_t attempt_budget = 1000);

} // namespace oatk
