#include "oatk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "oatk/errors.hpp"
#include "oatk/field.hpp"

namespace oatk {

namespace {

using boost::multiprecision::cpp_int;

cpp_int big_pow(std::uint64_t base, std::uint64_t exp) {
    cpp_int acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) acc *= base;
    return acc;
}

cpp_int big_binomial(std::uint64_t m, std::uint64_t k) {
    if (k > m) return 0;
    cpp_int acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc *= m - k + i;
        acc /= i;
    }
    return acc;
}

// Lexicographically rank-th k-subset of {0..m-1}.
std::vector<std::uint32_t> unrank_combination(std::uint32_t m, std::uint32_t k,
                                              std::uint64_t rank) {
    std::vector<std::uint32_t> idx(k);
    std::uint32_t v = 0;
    cpp_int rem = rank;
    for (std::uint32_t i = 0; i < k; ++i) {
        for (;;) {
            const cpp_int below = big_binomial(m - 1 - v, k - 1 - i);
            if (rem < below) break;
            rem -= below;
            ++v;
        }
        idx[i] = v++;
    }
    return idx;
}

bool next_combination(std::vector<std::uint32_t>& idx, std::uint32_t m) {
    const std::uint32_t k = static_cast<std::uint32_t>(idx.size());
    std::uint32_t i = k;
    while (i-- > 0) {
        if (idx[i] + (k - i) < m) {
            ++idx[i];
            for (std::uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

struct SubsetScan {
    std::uint64_t worst_dev = 0;
    std::uint64_t work = 0;
};

SubsetScan scan_subsets(const OrthogonalArray& a, std::uint32_t t, std::uint64_t lambda,
                        std::uint64_t nt, std::uint64_t first, std::uint64_t count) {
    SubsetScan out;
    std::vector<std::uint32_t> cols = unrank_combination(a.m, t, first);
    std::vector<std::uint64_t> strides(t);
    std::vector<std::uint64_t> counts(nt);
    for (std::uint64_t done = 0; done < count; ++done) {
        std::uint64_t stride = 1;
        for (std::uint32_t i = 0; i < t; ++i) {
            strides[i] = stride;
            stride *= a.n;
        }
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint64_t r = 0; r < a.s; ++r) {
            const std::uint32_t* row = a.cells.data() + r * a.m;
            std::uint64_t idx = 0;
            for (std::uint32_t i = 0; i < t; ++i)
                idx += static_cast<std::uint64_t>(row[cols[i]] - 1) * strides[i];
            ++counts[idx];
        }
        for (std::uint64_t c : counts) {
            const std::uint64_t dev = (c >= lambda) ? c - lambda : lambda - c;
            out.worst_dev = std::max(out.worst_dev, dev);
        }
        out.work += a.s * t + nt;
        if (done + 1 < count) next_combination(cols, a.m);
    }
    return out;
}

double chi_square_threshold_999(std::uint64_t df) {
    // Wilson-Hilferty approximation of the 0.999 quantile.
    const double z = 3.0902323061678132;
    const double d = static_cast<double>(df);
    const double core = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * core * core * core;
}

} // namespace

VerifyReport verify_oa(const OrthogonalArray& a, std::uint32_t t, const VerifyOptions& opts) {
    if (t < 1 || t > a.m) throw ConfigError("verify: need 1 <= t <= m");
    if (a.s == 0 || a.cells.size() != static_cast<std::size_t>(a.s) * a.m)
        throw ConfigError("verify: malformed array");

    VerifyReport report;
    report.t = t;

    const cpp_int nt_big = big_pow(a.n, t);
    if (a.s % nt_big != 0) {
        report.pass = false;
        report.note = "row count " + std::to_string(a.s) + " is not divisible by n^t = " +
                      nt_big.str();
        return report;
    }
    const std::uint64_t lambda = cpp_int(a.s / nt_big).convert_to<std::uint64_t>();
    const std::uint64_t nt = nt_big.convert_to<std::uint64_t>();
    report.lambda = lambda;

    const cpp_int subsets_big = big_binomial(a.m, t);
    const cpp_int work_big = subsets_big * (cpp_int(a.s) * t + nt);
    if (work_big > opts.max_work)
        throw CapExceededError("verify: estimated work " + work_big.str() +
                               " cells exceeds the cap of " + std::to_string(opts.max_work));
    const std::uint64_t subsets = subsets_big.convert_to<std::uint64_t>();
    report.subsets = subsets;

    const std::uint32_t threads =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(std::max(1u, opts.threads), subsets));
    if (threads <= 1) {
        const SubsetScan scan = scan_subsets(a, t, lambda, nt, 0, subsets);
        report.worst_dev = scan.worst_dev;
        report.work = scan.work;
    } else {
        std::vector<SubsetScan> parts(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::uint64_t chunk = subsets / threads;
        const std::uint64_t rest = subsets % threads;
        std::uint64_t first = 0;
        for (std::uint32_t i = 0; i < threads; ++i) {
            const std::uint64_t count = chunk + (i < rest ? 1 : 0);
            pool.emplace_back([&, i, first, count] {
                parts[i] = scan_subsets(a, t, lambda, nt, first, count);
            });
            first += count;
        }
        for (auto& th : pool) th.join();
        for (const SubsetScan& part : parts) {
            report.worst_dev = std::max(report.worst_dev, part.worst_dev);
            report.work += part.work;
        }
    }

    report.pass = report.worst_dev == 0;
    return report;
}

HashDistributionReport exact_hash_distribution(std::uint64_t n, std::uint64_t m, std::uint32_t t,
                                               std::uint64_t p,
                                               std::span<const std::uint64_t> points,
                                               std::uint64_t max_work) {
    if (n < 2) throw ConfigError("hash distribution: alphabet size must be >= 2");
    if (t < 1 || points.size() != t)
        throw ConfigError("hash distribution: need exactly t query points");
    if (p % n != 1 || p <= m || !is_prime(p))
        throw ConfigError("hash distribution: need a prime p == 1 (mod n), p > m");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] < 1 || points[i] > m)
            throw ConfigError("hash distribution: query point outside [1, m]");
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw ConfigError("hash distribution: query points must be distinct");
    }

    const cpp_int work_big = big_pow(p, t) * big_pow(n, t);
    if (work_big > max_work)
        throw CapExceededError("hash distribution: p^t * n^t = " + work_big.str() +
                               " exceeds the cap of " + std::to_string(max_work));
    const std::uint64_t pt = big_pow(p, t).convert_to<std::uint64_t>();
    const std::uint64_t nt = big_pow(n, t).convert_to<std::uint64_t>();

    const FieldCtx f = FieldCtx::make(p);
    std::vector<std::uint64_t> excluded(t);
    for (std::uint32_t j = 0; j < t; ++j) excluded[j] = f.pow(points[j] % p, t);

    HashDistributionReport report;
    report.counts.assign(nt, 0);
    report.expected = pt;
    report.work = work_big.convert_to<std::uint64_t>();

    std::vector<std::uint64_t> coeff(t, 0);
    std::vector<bool> bad(t);
    std::vector<std::uint64_t> sym(t);
    std::vector<std::uint64_t> alpha(t);
    for (;;) {
        for (std::uint32_t j = 0; j < t; ++j) {
            const std::uint64_t y = f.eval_poly(coeff, points[j] % p);
            bad[j] = (y == excluded[j]);
            sym[j] = bad[j] ? 0 : fold_to_symbol(p, n, excluded[j], y);
        }

        std::fill(alpha.begin(), alpha.end(), 0);
        std::uint64_t idx = 0;
        for (;;) {
            std::uint64_t weight = 1;
            for (std::uint32_t j = 0; j < t; ++j) {
                if (bad[j]) continue;
                if (sym[j] == alpha[j] + 1) {
                    weight *= n;
                } else {
                    weight = 0;
                    break;
                }
            }
            report.counts[idx] += weight;

            std::uint32_t pos = t;
            bool more = false;
            while (pos-- > 0) {
                if (++alpha[pos] < n) {
                    more = true;
                    break;
                }
                alpha[pos] = 0;
            }
            if (!more) break;
            idx = 0;
            std::uint64_t stride = 1;
            for (std::uint32_t j = t; j-- > 0;) {
                idx += alpha[j] * stride;
                stride *= n;
            }
        }

        std::uint32_t pos = t;
        bool more = false;
        while (pos-- > 0) {
            if (++coeff[pos] < p) {
                more = true;
                break;
            }
            coeff[pos] = 0;
        }
        if (!more) break;
    }

    report.pass = std::all_of(report.counts.begin(), report.counts.end(),
                              [&](std::uint64_t c) { return c == pt; });
    return report;
}

ChiSquareResult chi_square_from_counts(std::span<const std::uint64_t> counts,
                                       std::uint64_t trials) {
    if (counts.size() < 2) throw ConfigError("chi-square: need at least two cells");
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    if (total != trials) throw ConfigError("chi-square: counts do not sum to the trial count");

    ChiSquareResult res;
    res.cells = counts.size();
    res.trials = trials;
    const double expect = static_cast<double>(trials) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expect;
        stat += d * d / expect;
    }
    res.statistic = stat;
    res.threshold = chi_square_threshold_999(counts.size() - 1);
    res.below = stat < res.threshold;
    return res;
}

ChiSquareResult chi_square_hash(const HashSampler& sampler,
                                std::span<const std::uint64_t> points, std::uint64_t trials,
                                std::uint64_t seed) {
    if (points.empty()) throw ConfigError("chi-square: need at least one query point");

    HashFunction probe = sampler(derive_seed(seed, 0));
    const std::uint64_t n = probe.alphabet();
    const std::uint32_t t = static_cast<std::uint32_t>(points.size());
    cpp_int cells_big = big_pow(n, t);
    if (cells_big > 100000000) throw ConfigError("chi-square: n^t too large to tally");
    const std::uint64_t cells = cells_big.convert_to<std::uint64_t>();
    if (trials < 100 * cells)
        throw ConfigError("chi-square: need at least 100 * n^t trials");

    std::vector<std::uint64_t> counts(cells, 0);
    for (std::uint64_t i = 0; i < trials; ++i) {
        HashFunction h = sampler(derive_seed(seed, i));
        if (h.alphabet() != n)
            throw ConfigError("chi-square: sampler changed the alphabet size");
        std::uint64_t idx = 0;
        std::uint64_t stride = 1;
        for (std::uint32_t j = 0; j < t; ++j) {
            idx += (h.eval(points[j]) - 1) * stride;
            stride *= n;
        }
        ++counts[idx];
    }
    return chi_square_from_counts(counts, trials);
}

} // namespace oatk
