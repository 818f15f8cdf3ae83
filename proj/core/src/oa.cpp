#include "oatk/oa.hpp"

#include <string>

#include "oatk/errors.hpp"
#include "oatk/primes.hpp"

namespace oatk {

namespace {

constexpr std::uint64_t kMaxAlphabet = 0xffffffffULL;

std::uint64_t checked_pow_u64(std::uint64_t base, std::uint64_t exp, const char* what) {
    __uint128_t acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > ~std::uint64_t{0})
            throw ConfigError(std::string(what) + ": power overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

bigint bigint_pow(std::uint64_t base, std::uint64_t exp) {
    bigint acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) acc *= base;
    return acc;
}

void check_cells(const bigint& rows, std::uint32_t m, std::uint64_t max_cells,
                 const char* what) {
    if (rows * m > max_cells)
        throw CapExceededError(std::string(what) + ": " + rows.str() + " x " +
                               std::to_string(m) + " cells exceed the cap of " +
                               std::to_string(max_cells));
}

} // namespace

OrthogonalArray OrthogonalArray::from_cells(std::uint64_t s, std::uint32_t m, std::uint64_t n,
                                            std::uint32_t t, std::vector<std::uint32_t> cells,
                                            OaProvenance provenance) {
    if (n < 1 || n > kMaxAlphabet) throw ConfigError("array: alphabet size out of range");
    if (m < 1 || t < 1 || t > m) throw ConfigError("array: need 1 <= t <= m");
    if (s < 1) throw ConfigError("array: need at least one row");
    if (cells.size() != static_cast<std::size_t>(s) * m)
        throw ConfigError("array: cell count does not match s x m");
    for (std::uint32_t v : cells)
        if (v < 1 || v > n) throw ConfigError("array: entry outside [1, n]");

    OrthogonalArray a;
    a.s = s;
    a.m = m;
    a.n = n;
    a.t = t;
    const bigint nt = bigint_pow(n, t);
    a.lambda = (s % nt == 0) ? bigint(s / nt).convert_to<std::uint64_t>() : 0;
    a.cells = std::move(cells);
    a.provenance = provenance;
    return a;
}

std::uint64_t fold_to_symbol(std::uint64_t q, std::uint64_t n, std::uint64_t excluded,
                             std::uint64_t x) {
    if (n < 1 || q % n != 1 % n) throw ConfigError("fold_to_symbol: need q == 1 (mod n)");
    if (excluded >= q || x >= q) throw ConfigError("fold_to_symbol: arguments must lie in [0, q)");
    if (x == excluded) throw std::logic_error("fold_to_symbol: x equals the excluded value");
    return 1 + ((x + q - 1 - excluded) % q) % n;
}

bigint predicted_rows(const BuildPlan& plan) {
    return bigint_pow(plan.n, plan.tau) * bigint_pow(plan.q, plan.code.dim);
}

std::uint64_t build_oa_stream(const BuildPlan& plan, const RowSink& sink,
                              const BuildOptions& opts) {
    validate_plan(plan);
    const bigint total = predicted_rows(plan);
    check_cells(total, plan.m, opts.max_cells, "build");
    const std::uint64_t s = total.convert_to<std::uint64_t>();
    if (plan.n > kMaxAlphabet) throw ConfigError("build: alphabet size out of range");

    const FieldCtx& f = plan.code.field;
    const std::uint64_t n = plan.n;
    const std::uint32_t m = plan.m;
    const std::uint32_t k = plan.code.dim;

    std::vector<std::uint64_t> coeff(k, 0);
    std::vector<std::uint64_t> word(m);
    std::vector<std::uint32_t> agree;   // coordinates where the codeword hits the far vector
    std::vector<std::uint64_t> sub;     // substituted symbols on those coordinates
    std::vector<std::uint32_t> row(m);
    std::uint64_t emitted = 0;

    for (;;) {
        for (std::uint32_t j = 0; j < m; ++j) {
            std::uint64_t acc = 0;
            for (std::uint32_t r = 0; r < k; ++r)
                acc = f.add(acc, f.mul(coeff[r], plan.code.at(r, j)));
            word[j] = acc;
        }

        agree.clear();
        for (std::uint32_t j = 0; j < m; ++j) {
            if (word[j] == plan.far.values[j])
                agree.push_back(j);
            else
                row[j] = static_cast<std::uint32_t>(
                    fold_to_symbol(plan.q, n, plan.far.values[j], word[j]));
        }
        const std::uint32_t l = static_cast<std::uint32_t>(agree.size());
        if (l > plan.tau)
            throw std::logic_error("build: codeword agreement exceeds the plan's bound");
        const std::uint64_t repeat = checked_pow_u64(n, plan.tau - l, "build");

        sub.assign(l, 0);
        for (;;) {
            for (std::uint32_t i = 0; i < l; ++i)
                row[agree[i]] = static_cast<std::uint32_t>(sub[i] + 1);
            sink(std::span<const std::uint32_t>(row.data(), m), repeat);
            emitted += repeat;
            std::uint32_t pos = l;
            bool more = false;
            while (pos-- > 0) {
                if (++sub[pos] < n) {
                    more = true;
                    break;
                }
                sub[pos] = 0;
            }
            if (!more) break;
        }

        std::uint32_t pos = k;
        bool more = false;
        while (pos-- > 0) {
            if (++coeff[pos] < plan.q) {
                more = true;
                break;
            }
            coeff[pos] = 0;
        }
        if (!more) break;
    }

    if (emitted != s) throw std::logic_error("build: emitted row count mismatch");
    return s;
}

OrthogonalArray build_oa(const BuildPlan& plan, const BuildOptions& opts) {
    std::vector<std::uint32_t> cells;
    const std::uint64_t s = build_oa_stream(
        plan,
        [&](std::span<const std::uint32_t> row, std::uint64_t repeat) {
            for (std::uint64_t i = 0; i < repeat; ++i)
                cells.insert(cells.end(), row.begin(), row.end());
        },
        opts);
    return OrthogonalArray::from_cells(s, plan.m, plan.n, plan.t, std::move(cells),
                                       plan.provenance);
}

std::uint64_t bush_oa_stream(std::uint64_t n, std::uint32_t m, std::uint32_t t,
                             const RowSink& sink, const BuildOptions& opts) {
    if (n < 2) throw ConfigError("bush: alphabet size must be >= 2");
    if (t < 1 || t > m) throw ConfigError("bush: need 1 <= t <= m");
    if (m > n) throw ConfigError("bush: needs m <= n distinct evaluation points");

    // n must be a prime power p^e.
    std::uint64_t p = n;
    std::uint32_t e = 1;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            std::uint64_t reduced = n;
            e = 0;
            while (reduced % d == 0) {
                reduced /= d;
                ++e;
            }
            if (reduced != 1)
                throw ConfigError("bush: alphabet size " + std::to_string(n) +
                                  " is not a prime power");
            p = d;
            break;
        }
    }
    FieldCtx f = FieldCtx::make(p, e);

    const bigint total = bigint_pow(n, t);
    check_cells(total, m, opts.max_cells, "bush");
    const std::uint64_t s = total.convert_to<std::uint64_t>();
    if (n > kMaxAlphabet) throw ConfigError("bush: alphabet size out of range");

    std::vector<std::uint64_t> coeff(t, 0);
    std::vector<std::uint32_t> row(m);
    std::uint64_t emitted = 0;
    for (;;) {
        for (std::uint32_t j = 0; j < m; ++j)
            row[j] = static_cast<std::uint32_t>(f.eval_poly(coeff, j) + 1);
        sink(std::span<const std::uint32_t>(row.data(), m), 1);
        ++emitted;
        std::uint32_t pos = t;
        bool more = false;
        while (pos-- > 0) {
            if (++coeff[pos] < n) {
                more = true;
                break;
            }
            coeff[pos] = 0;
        }
        if (!more) break;
    }
    if (emitted != s) throw std::logic_error("bush: emitted row count mismatch");
    return s;
}

OrthogonalArray bush_oa(std::uint64_t n, std::uint32_t m, std::uint32_t t,
                        const BuildOptions& opts) {
    std::vector<std::uint32_t> cells;
    const std::uint64_t s = bush_oa_stream(
        n, m, t,
        [&](std::span<const std::uint32_t> row, std::uint64_t repeat) {
            for (std::uint64_t i = 0; i < repeat; ++i)
                cells.insert(cells.end(), row.begin(), row.end());
        },
        opts);
    return OrthogonalArray::from_cells(s, m, n, t, std::move(cells), OaProvenance::Bush);
}

std::uint64_t product_oa_stream(const OrthogonalArray& a, const OrthogonalArray& b,
                                const RowSink& sink, const BuildOptions& opts) {
    if (a.m != b.m) throw ConfigError("product: factor arrays must share the column count");
    if (a.n * b.n > kMaxAlphabet) throw ConfigError("product: combined alphabet out of range");
    const bigint total = bigint(a.s) * b.s;
    check_cells(total, a.m, opts.max_cells, "product");
    const std::uint64_t s = total.convert_to<std::uint64_t>();

    std::vector<std::uint32_t> row(a.m);
    for (std::uint64_t i = 0; i < a.s; ++i) {
        for (std::uint64_t j = 0; j < b.s; ++j) {
            for (std::uint32_t c = 0; c < a.m; ++c)
                row[c] = static_cast<std::uint32_t>(
                    (static_cast<std::uint64_t>(a.at(i, c)) - 1) * b.n + b.at(j, c));
            sink(std::span<const std::uint32_t>(row.data(), a.m), 1);
        }
    }
    return s;
}

OrthogonalArray product_oa(const OrthogonalArray& a, const OrthogonalArray& b,
                           const BuildOptions& opts) {
    std::vector<std::uint32_t> cells;
    const std::uint64_t s = product_oa_stream(
        a, b,
        [&](std::span<const std::uint32_t> row, std::uint64_t repeat) {
            for (std::uint64_t i = 0; i < repeat; ++i)
                cells.insert(cells.end(), row.begin(), row.end());
        },
        opts);
    return OrthogonalArray::from_cells(s, a.m, a.n * b.n, std::min(a.t, b.t), std::move(cells),
                                       OaProvenance::Product);
}

OrthogonalArray trivial_oa(std::uint32_t m, std::uint32_t t) {
    if (m < 1 || t < 1 || t > m) throw ConfigError("trivial array: need 1 <= t <= m");
    return OrthogonalArray::from_cells(1, m, 1, t, std::vector<std::uint32_t>(m, 1),
                                       OaProvenance::Product);
}

bigint rao_bound(std::uint32_t m, std::uint64_t n, std::uint32_t t) {
    if (n < 2) throw ConfigError("rao_bound: alphabet size must be >= 2");
    if (t < 1 || t > m) throw ConfigError("rao_bound: need 1 <= t <= m");
    const std::uint32_t half = t / 2;
    bigint binom = 1;
    for (std::uint32_t i = 1; i <= half; ++i) {
        binom *= m - half + i;
        binom /= i;
    }
    bigint pw = 1;
    for (std::uint32_t i = 0; i < half; ++i) pw *= n - 1;
    return binom * pw;
}

Ratio size_ratio(const bigint& rows, const bigint& bound) {
    if (bound == 0) throw ConfigError("size_ratio: zero bound");
    const bigint g = boost::multiprecision::gcd(rows, bound);
    return Ratio{rows / g, bound / g};
}

} // namespace oatk
