#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oatk/hash.hpp"
#include "oatk/oa.hpp"

namespace oatk {

struct VerifyReport {
    bool pass = false;
    std::uint32_t t = 0;
    std::uint64_t lambda = 0;
    std::uint64_t subsets = 0;   ///< column subsets examined
    std::uint64_t worst_dev = 0; ///< max |count - lambda| over all tuples
    std::uint64_t work = 0;      ///< cells touched
    std::string note;            ///< diagnosis on structural failure
};

struct VerifyOptions {
    std::uint64_t max_work = 1000000000; ///< cap on cells touched
    std::uint32_t threads = 1;
};

/// Exhaustive strength check: counts every tuple in every t-subset of
/// columns with exact integer arithmetic. pass requires worst_dev == 0.
/// s not divisible by n^t fails immediately with a diagnosis note.
/// Throws CapExceededError when the estimated work exceeds the cap.
VerifyReport verify_oa(const OrthogonalArray& a, std::uint32_t t,
                       const VerifyOptions& opts = {});

struct HashDistributionReport {
    bool pass = false;
    std::vector<std::uint64_t> counts; ///< n^t entries, tuple-indexed
    std::uint64_t expected = 0;        ///< p^t
    std::uint64_t work = 0;
};

/// Ground truth for exact t-independence: enumerates all p^t coefficient
/// vectors and accumulates, for each target tuple alpha in [n]^t, the exact
/// weight with which the family maps the queried points to alpha
/// (replacements contribute uniformly). pass iff every count equals p^t.
HashDistributionReport exact_hash_distribution(std::uint64_t n, std::uint64_t m,
                                               std::uint32_t t, std::uint64_t p,
                                               std::span<const std::uint64_t> points,
                                               std::uint64_t max_work = 1000000000);

struct ChiSquareResult {
    double statistic = 0.0;
    double threshold = 0.0; ///< 0.999 chi-square quantile (Wilson-Hilferty)
    bool below = false;
    std::uint64_t cells = 0;
    std::uint64_t trials = 0;
};

/// Statistic over pre-tallied tuple counts. Advisory only.
ChiSquareResult chi_square_from_counts(std::span<const std::uint64_t> counts,
                                       std::uint64_t trials);

using HashSampler = std::function<HashFunction(std::uint64_t fn_seed)>;

/// Samples `trials` functions (seeds derived from `seed`), evaluates each at
/// `points`, tallies tuples and returns the statistic. Requires
/// trials >= 100 * n^t. Advisory: never a hard gate.
ChiSquareResult chi_square_hash(const HashSampler& sampler,
                                std::span<const std::uint64_t> points,
                                std::uint64_t trials, std::uint64_t seed);

} // namespace oatk
