// Acceptance gate: one pass/fail line per criterion, exact tolerances.
// Exit status 0 only when every criterion holds.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oatk/build_plan.hpp"
#include "oatk/codes.hpp"
#include "oatk/errors.hpp"
#include "oatk/hash.hpp"
#include "oatk/oa.hpp"
#include "oatk/rng.hpp"
#include "oatk/verify.hpp"

using namespace oatk;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string label;
    bool pass = false;
    std::string detail;
    double ms = 0.0;
};

// Every pair-tuple count across all column pairs, by direct enumeration.
bool all_tuple_counts_equal(const OrthogonalArray& a, std::uint32_t t, std::uint64_t expect) {
    std::vector<std::uint32_t> cols(t);
    for (std::uint32_t i = 0; i < t; ++i) cols[i] = i;
    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
        for (std::uint64_t r = 0; r < a.s; ++r) {
            std::vector<std::uint32_t> key(t);
            for (std::uint32_t i = 0; i < t; ++i) key[i] = a.at(r, cols[i]);
            ++counts[key];
        }
        std::uint64_t tuples = 1;
        for (std::uint32_t i = 0; i < t; ++i) tuples *= a.n;
        if (counts.size() != tuples) return false;
        for (const auto& [key, count] : counts)
            if (count != expect) return false;
        std::uint32_t i = t;
        while (i > 0 && cols[i - 1] == a.m - t + i - 1) --i;
        if (i == 0) break;
        ++cols[i - 1];
        for (std::uint32_t j = i; j < t; ++j) cols[j] = cols[j - 1] + 1;
    }
    return true;
}

std::uint32_t local_rank(std::vector<std::uint64_t> mat, std::uint32_t rows, std::uint32_t cols,
                         const FieldCtx& f) {
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < cols && rank < rows; ++col) {
        std::uint32_t pivot = rank;
        while (pivot < rows && mat[pivot * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::uint32_t c = 0; c < cols; ++c)
            std::swap(mat[rank * cols + c], mat[pivot * cols + c]);
        const std::uint64_t scale = f.inv(mat[rank * cols + col]);
        for (std::uint32_t c = 0; c < cols; ++c)
            mat[rank * cols + c] = f.mul(mat[rank * cols + c], scale);
        for (std::uint32_t r = 0; r < rows; ++r) {
            if (r == rank || mat[r * cols + col] == 0) continue;
            const std::uint64_t factor = mat[r * cols + col];
            for (std::uint32_t c = 0; c < cols; ++c)
                mat[r * cols + c] =
                    f.sub(mat[r * cols + c], f.mul(factor, mat[rank * cols + c]));
        }
        ++rank;
    }
    return rank;
}

// Smallest d for which some d generator columns are linearly dependent,
// via a test-local rank routine (independent of the library's check).
std::uint32_t brute_dual_distance(const LinearCode& code) {
    for (std::uint32_t d = 1; d <= code.dim + 1 && d <= code.length; ++d) {
        std::vector<std::uint32_t> cols(d);
        for (std::uint32_t i = 0; i < d; ++i) cols[i] = i;
        while (true) {
            std::vector<std::uint64_t> sub(std::size_t{code.dim} * d);
            for (std::uint32_t r = 0; r < code.dim; ++r)
                for (std::uint32_t c = 0; c < d; ++c) sub[r * d + c] = code.at(r, cols[c]);
            if (local_rank(sub, code.dim, d, code.field) < d) return d;
            std::uint32_t i = d;
            while (i > 0 && cols[i - 1] == code.length - d + i - 1) --i;
            if (i == 0) break;
            ++cols[i - 1];
            for (std::uint32_t j = i; j < d; ++j) cols[j] = cols[j - 1] + 1;
        }
    }
    return code.length + 1;
}

std::uint32_t brute_min_distance(const LinearCode& code) {
    const FieldCtx& f = code.field;
    const std::uint64_t p = f.order();
    std::uint32_t best = code.length + 1;
    std::vector<std::uint64_t> coeff(code.dim, 0);
    while (true) {
        std::uint32_t i = code.dim;
        while (i > 0 && coeff[i - 1] == p - 1) coeff[--i] = 0;
        if (i == 0) break;
        ++coeff[i - 1];

        std::uint32_t weight = 0;
        for (std::uint32_t c = 0; c < code.length; ++c) {
            std::uint64_t v = 0;
            for (std::uint32_t r = 0; r < code.dim; ++r)
                v = f.add(v, f.mul(coeff[r], code.at(r, c)));
            if (v != 0) ++weight;
        }
        best = std::min(best, weight);
    }
    return best;
}

void c1_rs_end_to_end(Criterion& c) {
    const BuildPlan plan = plan_rs(6, 4, 2);
    if (plan.q != 7) {
        c.detail = "plan picked q=" + std::to_string(plan.q);
        return;
    }
    const OrthogonalArray a = build_oa(plan);
    if (a.s != 1764) {
        c.detail = "s=" + std::to_string(a.s);
        return;
    }
    const VerifyReport r = verify_oa(a, 2);
    c.pass = r.pass && r.lambda == 49 && r.worst_dev == 0 &&
             all_tuple_counts_equal(a, 2, 49);
    c.detail = "p=7 s=1764 every pair count 49";
}

void c2_rs_binary(Criterion& c) {
    const BuildPlan plan = plan_rs(2, 3, 2);
    const OrthogonalArray a = build_oa(plan);
    const VerifyReport r = verify_oa(a, 2);
    c.pass = plan.q == 5 && a.s == 100 && r.pass && r.lambda == 25 &&
             all_tuple_counts_equal(a, 2, 25);
    c.detail = "p=5 s=100 every pair count 25";
}

void c3_rs_strength3(Criterion& c) {
    const BuildPlan plan = plan_rs(2, 4, 3);
    const OrthogonalArray a = build_oa(plan);
    const VerifyReport r = verify_oa(a, 3);
    c.pass = plan.q == 5 && a.s == 1000 && r.pass && r.subsets == 4 && r.lambda == 125 &&
             all_tuple_counts_equal(a, 3, 125);
    c.detail = "p=5 s=1000 all 4 triple subsets count 125";
}

void c4_hash_distribution(Criterion& c) {
    bool every_count_exact = true;
    int pairs = 0;
    for (std::uint64_t x1 = 1; x1 <= 4 && every_count_exact; ++x1)
        for (std::uint64_t x2 = x1 + 1; x2 <= 4 && every_count_exact; ++x2) {
            const std::vector<std::uint64_t> points = {x1, x2};
            const HashDistributionReport r = exact_hash_distribution(6, 4, 2, 7, points);
            ++pairs;
            if (!r.pass || r.counts.size() != 36 || r.expected != 49)
                every_count_exact = false;
            for (std::uint64_t count : r.counts)
                if (count != 49) every_count_exact = false;
        }
    c.pass = every_count_exact && pairs == 6;
    c.detail = "all 6 point pairs, 36 counts each equal 49";
}

void c5_fold_property(Criterion& c) {
    for (std::uint64_t q = 2; q <= 200; ++q) {
        for (std::uint64_t n = 1; n < q; ++n) {
            if (q % n != 1 % n) continue;
            for (std::uint64_t excluded = 0; excluded < q; ++excluded) {
                std::vector<std::uint64_t> image(n + 1, 0);
                for (std::uint64_t x = 0; x < q; ++x) {
                    if (x == excluded) continue;
                    const std::uint64_t v = fold_to_symbol(q, n, excluded, x);
                    if (v < 1 || v > n) {
                        c.detail = "value out of range";
                        return;
                    }
                    ++image[v];
                }
                for (std::uint64_t v = 1; v <= n; ++v)
                    if (image[v] != (q - 1) / n) {
                        c.detail = "q=" + std::to_string(q) + " n=" + std::to_string(n);
                        return;
                    }
            }
        }
    }
    c.pass = true;
    c.detail = "each value hit (q-1)/n times for every q <= 200, every excluded";
}

void c6_store_bound(Criterion& c) {
    CounterRng rng(0x6f61746b);
    for (int i = 0; i < 1000; ++i) {
        const std::uint32_t t = 1 + static_cast<std::uint32_t>(rng.below(8));
        const std::uint64_t n = 2 + rng.below(15);
        const std::uint64_t m = t + rng.below(65 - t);
        HashFunction h = HashFunction::create(n, m, t, rng.next());
        for (std::uint64_t x = 1; x <= m; ++x) {
            const std::uint64_t v = h.eval(x);
            if (v < 1 || v > n) {
                c.detail = "value out of range";
                return;
            }
        }
        if (h.replacements().size() > t) {
            c.detail = "store grew past t on instance " + std::to_string(i);
            return;
        }
    }
    c.pass = true;
    c.detail = "1000 functions, full-domain evaluation, store stayed within t";
}

void c7_random_path(Criterion& c) {
    int successes = 0;
    bool checks_hold = true;
    RandomPlanOptions opts;
    opts.p_override = 5;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        BuildPlan plan;
        try {
            plan = plan_random(2, 8, 2, seed, opts);
        } catch (const SearchExhaustedError&) {
            continue;
        }
        if (plan.code.dim != 4) continue; // success means a full-rank sample
        ++successes;
        if (!dual_distance_at_least(plan.code, 3)) checks_hold = false;
        if (!far_from_code(plan.code, plan.far.values, 6, FarCheckMode::Enumerate))
            checks_hold = false;
        const OrthogonalArray a = build_oa(plan);
        if (a.s != 40000 || a.m != 8) checks_hold = false;
        VerifyOptions vopts;
        vopts.max_work = 4000000000ULL;
        const VerifyReport r = verify_oa(a, 2, vopts);
        if (!r.pass || r.worst_dev != 0) checks_hold = false;
    }
    c.pass = successes >= 18 && checks_hold;
    c.detail = std::to_string(successes) + "/20 seeds built 40000x8 arrays that verify";
}

void c8_far_mode_agreement(Criterion& c) {
    CounterRng rng(88);
    int done = 0;
    while (done < 200) {
        const std::uint64_t primes[] = {3, 5, 7, 11};
        const std::uint64_t p = primes[rng.below(4)];
        const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.below(9));
        const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(std::min(m, 4u)));
        double size = 1;
        for (std::uint32_t i = 0; i < k; ++i) size *= static_cast<double>(p);
        if (size > 100000.0) continue;

        const FieldCtx f = FieldCtx::make(p);
        std::vector<std::uint64_t> gen(std::size_t{k} * m);
        for (auto& g : gen) g = rng.below(p);
        if (local_rank(gen, k, m, f) != k) continue;
        const LinearCode code = LinearCode::from_generator(f, m, gen);

        std::vector<std::uint64_t> b(m);
        for (auto& x : b) x = rng.below(p);
        const std::uint32_t bound = static_cast<std::uint32_t>(rng.below(m + 1));
        const bool subset = far_from_code(code, b, bound, FarCheckMode::Subset);
        const bool enumerated = far_from_code(code, b, bound, FarCheckMode::Enumerate);
        if (subset != enumerated) {
            c.detail = "disagreement at instance " + std::to_string(done);
            return;
        }
        ++done;
    }
    c.pass = true;
    c.detail = "200 random instances, both modes agree";
}

void c9_rs_duality(Criterion& c) {
    int instances = 0;
    for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL}) {
        for (std::uint32_t m = 2; m <= p; ++m) {
            for (std::uint32_t a = 0; a <= 4 && a < m; ++a) {
                double size = 1;
                for (std::uint32_t i = 0; i <= a; ++i) size *= static_cast<double>(p);
                if (size > 100000.0) continue;
                const LinearCode code = rs_code(p, m, a);
                if (brute_min_distance(code) != m - a) {
                    c.detail = "min distance off at p=" + std::to_string(p) +
                               " m=" + std::to_string(m) + " a=" + std::to_string(a);
                    return;
                }
                if (brute_dual_distance(code) != a + 2) {
                    c.detail = "dual distance off at p=" + std::to_string(p) +
                               " m=" + std::to_string(m) + " a=" + std::to_string(a);
                    return;
                }
                ++instances;
            }
        }
    }
    c.pass = instances > 0;
    c.detail = std::to_string(instances) + " instances: distance m-a, dual a+2";
}

void c10_rao_gap(Criterion& c) {
    const bigint rows = predicted_rows(plan_rs(6, 4, 2));
    const bigint bound = rao_bound(4, 6, 2);
    const Ratio ratio = size_ratio(rows, bound);
    c.pass = rows == 1764 && bound == 20 && ratio.num == 441 && ratio.den == 5;
    c.detail = "s/rao = 1764/20 = 441/5 exactly";
}

void c11_baselines(Criterion& c) {
    const OrthogonalArray bush = bush_oa(5, 5, 2);
    const bool bush_ok =
        bush.s == 25 && bush.lambda == 1 && verify_oa(bush, 2).pass;

    const OrthogonalArray f2 = OrthogonalArray::from_cells(
        4, 3, 2, 2, {1, 1, 1, 1, 2, 2, 2, 1, 2, 2, 2, 1}, OaProvenance::Imported);
    const OrthogonalArray f3 = OrthogonalArray::from_cells(
        9, 3, 3, 2,
        {1, 1, 1, 1, 2, 2, 1, 3, 3, 2, 1, 2, 2, 2, 3, 2, 3, 1, 3, 1, 3, 3, 2, 1, 3, 3, 2},
        OaProvenance::Imported);
    const OrthogonalArray prod = product_oa(f2, f3);
    const bool product_ok = prod.s == 36 && prod.n == 6 && verify_oa(prod, 2).pass;

    c.pass = bush_ok && product_ok;
    c.detail = "bush OA[25,5,5,2] lambda=1; product OA[36,3,6,2] verifies";
}

void c12_determinism(Criterion& c) {
    const auto slurp = [](const fs::path& path) {
        std::ifstream f(path, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const fs::path dir = fs::temp_directory_path() / "oatk_acceptance";
    fs::create_directories(dir);

    const OrthogonalArray a1 = build_oa(plan_rs(6, 4, 2));
    const OrthogonalArray a2 = build_oa(plan_rs(6, 4, 2));
    bool ok = a1.cells == a2.cells;

    struct Job {
        const char* name;
        std::vector<std::string> args;
    };
    const std::vector<Job> jobs = {
        {"rs.oa", {"build", "--n", "6", "--m", "4", "--t", "2", "--out"}},
        {"rand.oa",
         {"build", "--n", "2", "--m", "8", "--t", "2", "--code", "random", "--seed", "5",
          "--p-override", "5", "--out"}},
        {"fn.oah", {"hash", "new", "--n", "6", "--m", "64", "--t", "4", "--seed", "11", "--out"}},
    };
    for (const Job& job : jobs) {
        std::string first, second;
        for (int round = 0; round < 2; ++round) {
            const fs::path out = dir / (std::string(job.name) + (round ? ".b" : ".a"));
            std::vector<std::string> args = job.args;
            args.push_back(out.string());
            std::ostringstream so, se;
            if (run_cli(args, so, se) != 0) ok = false;
            (round ? second : first) = slurp(out);
        }
        if (first.empty() || first != second) ok = false;
    }
    fs::remove_all(dir);
    c.pass = ok;
    c.detail = "library rebuilds and cli reruns (rs, random, hash) byte-identical";
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "rs end-to-end n=6 m=4 t=2"},
        {2, "rs end-to-end n=2 m=3 t=2"},
        {3, "rs strength 3 n=2 m=4"},
        {4, "exact hash family uniformity"},
        {5, "fold map balance up to q=200"},
        {6, "replacement store bound over 1000 functions"},
        {7, "random code path at override scale"},
        {8, "far check oracle equivalence"},
        {9, "rs distance and dual distance by brute force"},
        {10, "rao gap exact ratio"},
        {11, "bush and product baselines"},
        {12, "byte-identical determinism"},
    };

    const double budget_ms[12] = {1000, 1000, 1000, 1000, 5000, 0, 30000, 0, 0, 0, 0, 0};

    bool all_pass = true;
    for (Criterion& c : criteria) {
        const auto start = Clock::now();
        try {
            switch (c.id) {
                case 1: c1_rs_end_to_end(c); break;
                case 2: c2_rs_binary(c); break;
                case 3: c3_rs_strength3(c); break;
                case 4: c4_hash_distribution(c); break;
                case 5: c5_fold_property(c); break;
                case 6: c6_store_bound(c); break;
                case 7: c7_random_path(c); break;
                case 8: c8_far_mode_agreement(c); break;
                case 9: c9_rs_duality(c); break;
                case 10: c10_rao_gap(c); break;
                case 11: c11_baselines(c); break;
                case 12: c12_determinism(c); break;
            }
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        c.ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        const double budget = budget_ms[c.id - 1];
        if (budget > 0 && c.ms > budget) {
            c.pass = false;
            c.detail += " [over time budget]";
        }
        all_pass = all_pass && c.pass;

        std::ostringstream line;
        line << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.label << " ("
             << c.detail << ") [" << static_cast<std::uint64_t>(c.ms) << " ms]";
        std::cout << line.str() << "\n";
    }
    return all_pass ? 0 : 1;
}
