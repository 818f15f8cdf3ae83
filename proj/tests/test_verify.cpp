#include "doctest.h"

#include <cstdint>
#include <vector>

#include "oatk/errors.hpp"
#include "oatk/oa.hpp"
#include "oatk/verify.hpp"

using namespace oatk;

TEST_CASE("verify_oa passes a correct array with exact counts") {
    const OrthogonalArray a = build_oa(plan_rs(2, 3, 2));
    const VerifyReport r = verify_oa(a, 2);
    CHECK(r.pass);
    CHECK(r.t == 2);
    CHECK(r.lambda == 25);
    CHECK(r.subsets == 3);
    CHECK(r.worst_dev == 0);
    CHECK(r.work > 0);
    CHECK(r.note.empty());
}

TEST_CASE("verify_oa catches a single corrupted cell") {
    OrthogonalArray a = build_oa(plan_rs(2, 3, 2));
    a.cells[7] = (a.cells[7] == 1) ? 2 : 1;
    const VerifyReport r = verify_oa(a, 2);
    CHECK_FALSE(r.pass);
    CHECK(r.worst_dev >= 1);
}

TEST_CASE("verify_oa reports non-divisible row counts as failure, not error") {
    const OrthogonalArray odd = OrthogonalArray::from_cells(
        3, 2, 2, 1, {1, 1, 1, 2, 2, 1}, OaProvenance::Imported);
    const VerifyReport r = verify_oa(odd, 1);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("verify_oa strength above the declared one can fail honestly") {
    // OA[4,3,2,2] has strength 2 but not 3 (4 rows < 2^3 tuples).
    const OrthogonalArray a = OrthogonalArray::from_cells(
        4, 3, 2, 2, {1, 1, 1, 1, 2, 2, 2, 1, 2, 2, 2, 1}, OaProvenance::Imported);
    CHECK(verify_oa(a, 2).pass);
    CHECK_FALSE(verify_oa(a, 3).pass);
    CHECK_THROWS_AS(verify_oa(a, 4), ConfigError); // t > m
    CHECK_THROWS_AS(verify_oa(a, 0), ConfigError);
}

TEST_CASE("verify_oa respects the work cap") {
    const OrthogonalArray a = build_oa(plan_rs(6, 4, 2));
    VerifyOptions opts;
    opts.max_work = 100;
    CHECK_THROWS_AS(verify_oa(a, 2, opts), CapExceededError);
}

TEST_CASE("threaded verification agrees with serial") {
    const OrthogonalArray a = build_oa(plan_rs(6, 4, 2));
    const VerifyReport serial = verify_oa(a, 2);
    VerifyOptions opts;
    opts.threads = 3;
    const VerifyReport threaded = verify_oa(a, 2, opts);
    CHECK(serial.pass == threaded.pass);
    CHECK(serial.worst_dev == threaded.worst_dev);
    CHECK(serial.subsets == threaded.subsets);

    OrthogonalArray bad = a;
    bad.cells[5] = (bad.cells[5] % 6) + 1;
    const VerifyReport s2 = verify_oa(bad, 2);
    const VerifyReport t2 = verify_oa(bad, 2, opts);
    CHECK(s2.pass == t2.pass);
    CHECK(s2.worst_dev == t2.worst_dev);
}

TEST_CASE("exact hash distribution is flat at p^t for a valid family") {
    const std::vector<std::uint64_t> points = {1, 2};
    const HashDistributionReport r = exact_hash_distribution(6, 4, 2, 7, points);
    CHECK(r.pass);
    CHECK(r.expected == 49);
    CHECK(r.counts.size() == 36);
    for (std::uint64_t c : r.counts) CHECK(c == 49);

    const std::vector<std::uint64_t> p13 = {3, 9};
    const HashDistributionReport r2 = exact_hash_distribution(4, 12, 2, 13, p13);
    CHECK(r2.pass);
    CHECK(r2.expected == 169);
}

TEST_CASE("exact hash distribution rejects invalid setups") {
    const std::vector<std::uint64_t> points = {1, 2};
    const std::vector<std::uint64_t> dup = {2, 2};
    const std::vector<std::uint64_t> one = {1};
    CHECK_THROWS_AS(exact_hash_distribution(6, 4, 2, 8, points), ConfigError);  // not prime
    CHECK_THROWS_AS(exact_hash_distribution(6, 4, 2, 11, points), ConfigError); // 11 != 1 mod 6
    CHECK_THROWS_AS(exact_hash_distribution(6, 4, 2, 7, dup), ConfigError);     // repeated point
    CHECK_THROWS_AS(exact_hash_distribution(6, 4, 2, 7, one), ConfigError);     // wrong arity
    CHECK_THROWS_AS(exact_hash_distribution(6, 4, 2, 7, points, 10), CapExceededError);
}

TEST_CASE("chi-square statistic on hand counts") {
    const std::vector<std::uint64_t> counts = {30, 20, 25, 25};
    const ChiSquareResult r = chi_square_from_counts(counts, 100);
    CHECK(r.statistic == doctest::Approx(2.0));
    CHECK(r.cells == 4);
    CHECK(r.trials == 100);
    CHECK(r.below);

    // df = 3 at the 0.999 quantile is near 16.27; the approximation must be
    // in the right neighbourhood and monotone in the cell count.
    CHECK(r.threshold > 14.0);
    CHECK(r.threshold < 18.5);
    const ChiSquareResult wide =
        chi_square_from_counts(std::vector<std::uint64_t>(36, 100), 3600);
    CHECK(wide.threshold > r.threshold);

    CHECK_THROWS_AS(chi_square_from_counts(std::vector<std::uint64_t>{5}, 5), ConfigError);
    CHECK_THROWS_AS(chi_square_from_counts(counts, 99), ConfigError); // sum mismatch
}

TEST_CASE("sampled chi-square over the family is deterministic and sane") {
    const std::vector<std::uint64_t> points = {1, 3};
    const HashSampler sampler = [](std::uint64_t fn_seed) {
        return HashFunction::create(2, 4, 2, fn_seed);
    };
    const ChiSquareResult a = chi_square_hash(sampler, points, 400, 5);
    const ChiSquareResult b = chi_square_hash(sampler, points, 400, 5);
    CHECK(a.statistic == b.statistic);
    CHECK(a.cells == 4);
    CHECK(a.trials == 400);
    CHECK(a.statistic >= 0.0);

    CHECK_THROWS_AS(chi_square_hash(sampler, points, 100, 5), ConfigError); // trials too few
}
