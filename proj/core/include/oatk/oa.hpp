#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oatk/build_plan.hpp"

namespace oatk {

using bigint = boost::multiprecision::cpp_int;

/// An s x m array over the alphabet [n] = {1..n}, declared strength t.
/// Index of every t columns is meant to hold each tuple of [n]^t exactly
/// lambda = s / n^t times; that claim is checked by verify_oa, not here.
struct OrthogonalArray {
    std::uint64_t s = 0;
    std::uint32_t m = 0;
    std::uint64_t n = 0;
    std::uint32_t t = 0;
    std::uint64_t lambda = 0; ///< s / n^t when divisible, else 0
    std::vector<std::uint32_t> cells; ///< row-major, values in [1, n]
    OaProvenance provenance = OaProvenance::Imported;

    std::uint32_t at(std::uint64_t row, std::uint32_t col) const {
        return cells[row * m + col];
    }

    /// Validates shape and entry ranges; computes lambda. Throws ConfigError.
    static OrthogonalArray from_cells(std::uint64_t s, std::uint32_t m, std::uint64_t n,
                                      std::uint32_t t, std::vector<std::uint32_t> cells,
                                      OaProvenance provenance);
};

/// Maps x in [0, q) \ {excluded} onto [n] = {1..n}:
/// 1 + (((x + q - 1 - excluded) mod q) mod n). Exactly (q-1)/n-to-1 when
/// q == 1 (mod n). x == excluded is a contract violation (throws logic_error).
std::uint64_t fold_to_symbol(std::uint64_t q, std::uint64_t n, std::uint64_t excluded,
                             std::uint64_t x);

/// Receives each distinct emitted row once, with its repeat count.
/// Consumers that need physical rows write the row `repeat` times.
using RowSink = std::function<void(std::span<const std::uint32_t>, std::uint64_t repeat)>;

/// Exact row count of the array a plan builds: n^tau * q^dim.
bigint predicted_rows(const BuildPlan& plan);

struct BuildOptions {
    std::uint64_t max_cells = 100000000; ///< cap on s * m
};

/// Streams the array of a validated plan to `sink` in deterministic order:
/// codewords by lexicographic coefficient vector; per codeword, substituted
/// values on the agreement set in lexicographic [n]^l order, each with
/// repeat n^(tau - l). Returns the row count s.
std::uint64_t build_oa_stream(const BuildPlan& plan, const RowSink& sink,
                              const BuildOptions& opts = {});

/// In-memory wrapper over build_oa_stream (duplicates expanded).
OrthogonalArray build_oa(const BuildPlan& plan, const BuildOptions& opts = {});

/// Classical prime-power baseline: rows are evaluations of all n^t
/// polynomials of degree < t over F_n at m distinct points, so s = n^t and
/// lambda = 1. Requires n a prime power and t <= m <= n.
std::uint64_t bush_oa_stream(std::uint64_t n, std::uint32_t m, std::uint32_t t,
                             const RowSink& sink, const BuildOptions& opts = {});
OrthogonalArray bush_oa(std::uint64_t n, std::uint32_t m, std::uint32_t t,
                        const BuildOptions& opts = {});

/// Entry-wise product: row (i, j) has entries (A[i,c] - 1) * B.n + B[j,c].
/// Strength min(A.t, B.t), alphabet A.n * B.n, s = A.s * B.s.
std::uint64_t product_oa_stream(const OrthogonalArray& a, const OrthogonalArray& b,
                                const RowSink& sink, const BuildOptions& opts = {});
OrthogonalArray product_oa(const OrthogonalArray& a, const OrthogonalArray& b,
                           const BuildOptions& opts = {});

/// OA[1, m, 1, t]: the single all-ones row. Identity for product_oa.
OrthogonalArray trivial_oa(std::uint32_t m, std::uint32_t t);

/// Lower bound on rows of any OA of strength t: C(m, floor(t/2)) * (n-1)^floor(t/2).
bigint rao_bound(std::uint32_t m, std::uint64_t n, std::uint32_t t);

/// Exact reduced fraction.
struct Ratio {
    bigint num;
    bigint den;
};
Ratio size_ratio(const bigint& rows, const bigint& bound);

} // namespace oatk
