#include "oatk/codes.hpp"

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "oatk/build_plan.hpp"
#include "oatk/errors.hpp"
#include "oatk/primes.hpp"
#include "oatk/rng.hpp"

namespace oatk {

namespace {

using boost::multiprecision::cpp_int;

// In-place row reduction over F_p; returns the rank. `rows` x `cols`,
// row-major. Reduces to row echelon form (not normalized).
std::uint32_t row_reduce(std::vector<std::uint64_t>& mat, std::uint32_t rows, std::uint32_t cols,
                         const FieldCtx& f) {
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < cols && rank < rows; ++col) {
        std::uint32_t pivot = rank;
        while (pivot < rows && mat[std::size_t{pivot} * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::uint32_t j = col; j < cols; ++j)
                std::swap(mat[std::size_t{pivot} * cols + j], mat[std::size_t{rank} * cols + j]);
        const std::uint64_t inv = f.inv(mat[std::size_t{rank} * cols + col]);
        for (std::uint32_t r = rank + 1; r < rows; ++r) {
            const std::uint64_t head = mat[std::size_t{r} * cols + col];
            if (head == 0) continue;
            const std::uint64_t factor = f.mul(head, inv);
            for (std::uint32_t j = col; j < cols; ++j) {
                std::uint64_t& cell = mat[std::size_t{r} * cols + j];
                cell = f.sub(cell, f.mul(factor, mat[std::size_t{rank} * cols + j]));
            }
        }
        ++rank;
    }
    return rank;
}

// Lexicographic k-subsets of {0..m-1}.
struct Combination {
    std::vector<std::uint32_t> idx;
    std::uint32_t m = 0;

    Combination(std::uint32_t m_, std::uint32_t k) : m(m_) {
        idx.resize(k);
        for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    }

    bool next() {
        const std::uint32_t k = static_cast<std::uint32_t>(idx.size());
        if (k == 0) return false;
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
};

// Columns `pick` of the generator, as a dim x pick.size() matrix.
std::vector<std::uint64_t> gather_columns(const LinearCode& code,
                                          const std::vector<std::uint32_t>& pick) {
    std::vector<std::uint64_t> sub(std::size_t{code.dim} * pick.size());
    for (std::uint32_t r = 0; r < code.dim; ++r)
        for (std::size_t c = 0; c < pick.size(); ++c)
            sub[std::size_t{r} * pick.size() + c] = code.at(r, pick[c]);
    return sub;
}

// True when some coefficient vector c solves (c G)|_pick = values|_pick.
// Rows of the system are the picked columns; last column is augmented.
bool interpolation_consistent(const LinearCode& code, std::span<const std::uint64_t> values,
                              const std::vector<std::uint32_t>& pick) {
    const std::uint32_t rows = static_cast<std::uint32_t>(pick.size());
    const std::uint32_t cols = code.dim + 1;
    std::vector<std::uint64_t> sys(std::size_t{rows} * cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < code.dim; ++c)
            sys[std::size_t{r} * cols + c] = code.at(c, pick[r]);
        sys[std::size_t{r} * cols + code.dim] = values[pick[r]];
    }
    const std::uint32_t rank_aug = row_reduce(sys, rows, cols, code.field);
    // Consistent iff no echelon row reads 0 ... 0 | nonzero.
    for (std::uint32_t r = 0; r < rank_aug; ++r) {
        bool all_zero = true;
        for (std::uint32_t c = 0; c < code.dim; ++c)
            if (sys[std::size_t{r} * cols + c] != 0) {
                all_zero = false;
                break;
            }
        if (all_zero && sys[std::size_t{r} * cols + code.dim] != 0) return false;
    }
    return true;
}

cpp_int binomial(std::uint64_t m, std::uint64_t k) {
    if (k > m) return 0;
    cpp_int acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc *= m - k + i;
        acc /= i;
    }
    return acc;
}

} // namespace

LinearCode LinearCode::from_generator(FieldCtx field, std::uint32_t length,
                                      std::vector<std::uint64_t> gen) {
    if (field.degree() != 1) throw ConfigError("code: base field must be prime");
    if (length == 0) throw ConfigError("code: length must be >= 1");
    if (gen.empty() || gen.size() % length != 0)
        throw ConfigError("code: generator shape does not match length");
    const std::uint32_t dim = static_cast<std::uint32_t>(gen.size() / length);
    for (std::uint64_t v : gen)
        if (v >= field.order()) throw ConfigError("code: generator entry out of field range");
    std::vector<std::uint64_t> copy = gen;
    if (row_reduce(copy, dim, length, field) != dim)
        throw ConfigError("code: generator rows are linearly dependent");
    LinearCode code;
    code.field = field;
    code.length = length;
    code.dim = dim;
    code.gen = std::move(gen);
    return code;
}

LinearCode rs_code(std::uint64_t p, std::uint32_t m, std::uint32_t degree_bound) {
    FieldCtx f = FieldCtx::make(p);
    if (m < 1 || m > p)
        throw ConfigError("rs_code: need 1 <= m <= p to use evaluation points 1..m");
    if (degree_bound >= m) throw ConfigError("rs_code: degree bound must be below m");
    const std::uint32_t k = degree_bound + 1;
    std::vector<std::uint64_t> gen(std::size_t{k} * m);
    for (std::uint32_t j = 0; j < m; ++j) {
        const std::uint64_t x = (j + 1) % p;
        for (std::uint32_t i = 0; i < k; ++i) gen[std::size_t{i} * m + j] = f.pow(x, i);
    }
    LinearCode code = LinearCode::from_generator(std::move(f), m, std::move(gen));
    code.declared_dual_distance = degree_bound + 2;
    code.dual_provenance = Provenance::Analytic;
    return code;
}

FarVector rs_far_vector(std::uint64_t p, std::uint32_t m, std::uint32_t t) {
    FieldCtx f = FieldCtx::make(p);
    if (t < 2 || t > m || m > p) throw ConfigError("rs_far_vector: need 2 <= t <= m <= p");
    FarVector far;
    far.values.resize(m);
    for (std::uint32_t j = 0; j < m; ++j) far.values[j] = f.pow((j + 1) % p, t);
    far.agreement_bound = t;
    far.provenance = Provenance::Analytic;
    return far;
}

bool dual_distance_at_least(const LinearCode& code, std::uint32_t d) {
    if (d <= 1) return true;
    const std::uint32_t k = d - 1;
    if (k > code.length) return code.dim == code.length;
    if (k > code.dim) return false;
    Combination comb(code.length, k);
    do {
        std::vector<std::uint64_t> sub = gather_columns(code, comb.idx);
        if (row_reduce(sub, code.dim, k, code.field) != k) return false;
    } while (comb.next());
    return true;
}

bool far_from_code(const LinearCode& code, std::span<const std::uint64_t> values,
                   std::uint32_t agreement_bound, FarCheckMode mode) {
    if (values.size() != code.length)
        throw ConfigError("far_from_code: vector length does not match the code");
    for (std::uint64_t v : values)
        if (v >= code.field.order()) throw ConfigError("far_from_code: entry out of field range");
    if (agreement_bound >= code.length) return true;

    if (mode == FarCheckMode::Subset) {
        Combination comb(code.length, agreement_bound + 1);
        do {
            if (interpolation_consistent(code, values, comb.idx)) return false;
        } while (comb.next());
        return true;
    }

    // Enumeration: agreement of every codeword, including the zero word.
    double scale = 1.0;
    for (std::uint32_t i = 0; i < code.dim; ++i) scale *= static_cast<double>(code.field.order());
    if (scale > 1e7)
        throw ConfigError("far_from_code: enumeration mode needs p^k <= 10^7");
    std::vector<std::uint64_t> coeff(code.dim, 0);
    std::vector<std::uint64_t> word(code.length);
    const FieldCtx& f = code.field;
    for (;;) {
        for (std::uint32_t j = 0; j < code.length; ++j) {
            std::uint64_t acc = 0;
            for (std::uint32_t r = 0; r < code.dim; ++r)
                acc = f.add(acc, f.mul(coeff[r], code.at(r, j)));
            word[j] = acc;
        }
        std::uint32_t agree = 0;
        for (std::uint32_t j = 0; j < code.length; ++j)
            if (word[j] == values[j]) ++agree;
        if (agree > agreement_bound) return false;
        std::uint32_t pos = code.dim;
        while (pos-- > 0) {
            if (++coeff[pos] < f.order()) break;
            coeff[pos] = 0;
            if (pos == 0) return true;
        }
    }
}

bool gv_condition_holds(std::uint32_t m, std::uint32_t t, std::uint64_t p, std::uint32_t rows) {
    cpp_int lhs = 0;
    cpp_int ball = 1;
    for (std::uint32_t i = 1; i <= t; ++i) {
        ball = binomial(m, i);
        cpp_int pw = 1;
        for (std::uint32_t j = 0; j < i; ++j) pw *= p - 1;
        lhs += ball * pw;
    }
    cpp_int rhs = 1;
    for (std::uint32_t i = 0; i < rows; ++i) rhs *= p;
    return 4 * lhs <= rhs;
}

RandomCodeResult gv_random_code(std::uint32_t m, std::uint32_t t, std::uint64_t p,
                                std::uint32_t rows, std::uint64_t seed,
                                std::uint64_t attempt_budget) {
    if (t < 1 || t > m) throw ConfigError("gv_random_code: need 1 <= t <= m");
    if (rows == 0) throw ConfigError("gv_random_code: need at least one row");
    FieldCtx f = FieldCtx::make(p);
    CounterRng rng(seed);
    std::vector<std::uint64_t> mat(std::size_t{rows} * m);
    for (std::uint64_t attempt = 1; attempt <= attempt_budget; ++attempt) {
        for (auto& cell : mat) cell = rng.below(p);

        // Every t columns of the sample must be independent; row operations
        // preserve column relations, so checking the sample is checking the
        // row-space code.
        bool ok = t <= rows;
        if (ok) {
            Combination comb(m, t);
            do {
                std::vector<std::uint64_t> sub(std::size_t{rows} * t);
                for (std::uint32_t r = 0; r < rows; ++r)
                    for (std::uint32_t c = 0; c < t; ++c)
                        sub[std::size_t{r} * t + c] = mat[std::size_t{r} * m + comb.idx[c]];
                if (row_reduce(sub, rows, t, f) != t) {
                    ok = false;
                    break;
                }
            } while (comb.next());
        }
        if (!ok) continue;

        // Reduce to a row basis; dimension = rank.
        std::vector<std::uint64_t> echelon = mat;
        const std::uint32_t rank = row_reduce(echelon, rows, m, f);
        echelon.resize(std::size_t{rank} * m);
        LinearCode code = LinearCode::from_generator(f, m, std::move(echelon));
        code.declared_dual_distance = t + 1;
        code.dual_provenance = Provenance::Verified;
        return RandomCodeResult{std::move(code), attempt};
    }
    throw SearchExhaustedError("gv_random_code: attempt budget (" +
                               std::to_string(attempt_budget) + ") exhausted");
}

RandomFarVectorResult random_far_vector(const LinearCode& code, std::uint32_t agreement_bound,
                                        std::uint64_t seed, std::uint64_t attempt_budget) {
    CounterRng rng(seed);
    std::vector<std::uint64_t> values(code.length);
    for (std::uint64_t attempt = 1; attempt <= attempt_budget; ++attempt) {
        for (auto& v : values) v = rng.below(code.field.order());
        if (far_from_code(code, values, agreement_bound)) {
            FarVector far;
            far.values = values;
            far.agreement_bound = agreement_bound;
            far.provenance = Provenance::Verified;
            return RandomFarVectorResult{std::move(far), attempt};
        }
    }
    throw SearchExhaustedError("random_far_vector: attempt budget (" +
                               std::to_string(attempt_budget) + ") exhausted");
}

void validate_plan(const BuildPlan& plan) {
    if (plan.n < 2) throw ConfigError("plan: alphabet size must be >= 2");
    if (plan.t < 1 || plan.t > plan.m) throw ConfigError("plan: need 1 <= t <= m");
    if (plan.tau < plan.t) throw ConfigError("plan: agreement bound below the strength");
    if (plan.code.length != plan.m || plan.far.values.size() != plan.m)
        throw ConfigError("plan: code/far vector length does not match m");
    if (plan.q != plan.code.field.order() || plan.code.field.degree() != 1)
        throw ConfigError("plan: q must be the order of the code's prime field");
    if (plan.q % plan.n != 1) throw ConfigError("plan: q must be == 1 (mod n)");
    if (plan.far.agreement_bound != plan.tau)
        throw ConfigError("plan: tau must equal the far vector's agreement bound");

    const bool dual_declared = plan.code.declared_dual_distance >= plan.t + 1;
    if (!dual_declared && !dual_distance_at_least(plan.code, plan.t + 1))
        throw ConfigError("plan: code dual distance below t + 1");
    if (plan.far.provenance != Provenance::Analytic &&
        !far_from_code(plan.code, plan.far.values, plan.tau))
        throw ConfigError("plan: far vector fails its agreement bound");
}

BuildPlan plan_rs(std::uint64_t n, std::uint32_t m, std::uint32_t t, const RsPlanOptions& opts) {
    if (n < 2) throw ConfigError("plan_rs: alphabet size must be >= 2");
    if (t < 2 || t > m) throw ConfigError("plan_rs: need 2 <= t <= m");
    ConstructionPrimeOptions popts;
    popts.nu_num = opts.nu_num;
    popts.nu_den = opts.nu_den;
    const std::uint64_t p = find_construction_prime(n, m, popts);

    BuildPlan plan;
    plan.n = n;
    plan.m = m;
    plan.t = t;
    plan.q = p;
    plan.tau = t;
    plan.code = rs_code(p, m, t - 1);
    plan.far = rs_far_vector(p, m, t);
    plan.provenance = OaProvenance::Rs;
    if (plan.q % n != 1 || plan.q <= m || plan.code.dim != t || plan.tau != t)
        throw std::logic_error("plan_rs: construction guarantee violated");
    validate_plan(plan);
    return plan;
}

BuildPlan plan_random(std::uint64_t n, std::uint32_t m, std::uint32_t t, std::uint64_t seed,
                      const RandomPlanOptions& opts) {
    if (n < 2) throw ConfigError("plan_random: alphabet size must be >= 2");
    if (t < 2 || t > m) throw ConfigError("plan_random: need 2 <= t <= m");

    std::uint64_t p = opts.p_override;
    if (p != 0) {
        if (!is_prime(p)) throw ConfigError("plan_random: override prime is not prime");
        if (p % n != 1) throw ConfigError("plan_random: override prime must be == 1 (mod n)");
    } else {
        // Smallest prime == 1 (mod n) strictly above (m*e/t)^3.
        const long double threshold =
            std::pow(static_cast<long double>(m) * 2.718281828459045235L / t, 3.0L);
        PrimeSearchConfig cfg;
        cfg.modulus = n;
        cfg.residue = 1;
        cfg.min_exclusive = static_cast<std::uint64_t>(threshold);
        cfg.max_override = (std::uint64_t{1} << 62) - 1;
        p = find_prime_in_progression(cfg);
    }

    BuildPlan plan;
    plan.n = n;
    plan.m = m;
    plan.t = t;
    plan.q = p;
    plan.tau = 3 * t;
    RandomCodeResult rc =
        gv_random_code(m, t, p, 2 * t, derive_seed(seed, 1), opts.attempt_budget);
    plan.code = std::move(rc.code);
    RandomFarVectorResult rf =
        random_far_vector(plan.code, 3 * t, derive_seed(seed, 2), opts.attempt_budget);
    plan.far = std::move(rf.far);
    plan.provenance = OaProvenance::RandomCode;
    if (plan.code.dim > 2 * t) throw std::logic_error("plan_random: dimension above 2t");
    validate_plan(plan);
    return plan;
}

} // namespace oatk
