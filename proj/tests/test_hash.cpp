#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "oatk/errors.hpp"
#include "oatk/hash.hpp"

using namespace oatk;

namespace {

HashFunction frozen_example() {
    // p = 7, n = 6, g(x) = 3 + 2x - x^2.
    return HashFunction::from_parts(6, 4, 2, 7, 0, {3, 2}, ReplacementMode::LazyCache, 0, {});
}

std::uint64_t powmod_oracle(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) acc = (__uint128_t)acc * base % p;
        base = (__uint128_t)base * base % p;
        exp >>= 1;
    }
    return acc;
}

// Naive route to the folded value: power sums, no Horner.
std::uint64_t naive_eval(std::uint64_t n, std::uint32_t t, std::uint64_t p,
                         std::span<const std::uint64_t> coeffs, std::uint64_t x,
                         bool* bad = nullptr) {
    std::uint64_t g = 0;
    for (std::uint32_t i = 0; i < t; ++i)
        g = (g + (__uint128_t)coeffs[i] * powmod_oracle(x, i, p)) % p;
    g = (g + p - powmod_oracle(x, t, p)) % p;
    if (bad) *bad = (g == 0);
    if (g == 0) return 0;
    return 1 + ((g + p - 1) % p) % n;
}

} // namespace

TEST_CASE("frozen evaluation example") {
    HashFunction h = frozen_example();
    CHECK(h.eval(1) == 4);
    CHECK(h.eval(2) == 3);
    // x = 3: g = 3 + 6 - 9 = 0, a replacement case; value lands in [1, 6].
    const std::uint64_t r = h.eval(3);
    CHECK(r >= 1);
    CHECK(r <= 6);
    CHECK(h.replacements().size() == 1);
    CHECK(h.eval(3) == r); // stable identity once drawn
    CHECK(h.replacements().size() == 1);
}

TEST_CASE("evaluation costs exactly t multiply-adds") {
    for (std::uint32_t t : {1u, 2u, 5u, 17u}) {
        HashFunction h = HashFunction::create(4, 100, t, 9);
        EvalStats stats;
        h.eval(1, &stats);
        CHECK(stats.mul_adds == t);
    }
}

TEST_CASE("eval agrees with the naive polynomial route everywhere") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        HashFunction h = HashFunction::create(6, 48, 3, seed);
        for (std::uint64_t x = 1; x <= 48; ++x) {
            bool bad = false;
            const std::uint64_t expect =
                naive_eval(h.alphabet(), h.strength(), h.prime(), h.coefficients(), x, &bad);
            const std::uint64_t got = h.eval(x);
            if (bad) {
                CHECK(got >= 1);
                CHECK(got <= 6);
            } else {
                CHECK(got == expect);
            }
        }
        CHECK(h.replacements().size() <= h.strength());
    }
}

TEST_CASE("create draws coefficients below the prime, deterministically") {
    const HashFunction a = HashFunction::create(6, 4, 2, 42);
    CHECK(a.prime() == 7);
    CHECK(a.coefficients().size() == 2);
    for (std::uint64_t c : a.coefficients()) CHECK(c < 7);

    const HashFunction b = HashFunction::create(6, 4, 2, 42);
    CHECK(a.serialize() == b.serialize());
    const HashFunction c = HashFunction::create(6, 4, 2, 43);
    CHECK(a.serialize() != c.serialize());

    CHECK_THROWS_AS(HashFunction::create(1, 4, 2, 0), ConfigError);
    CHECK_THROWS_AS(HashFunction::create(6, 4, 5, 0), ConfigError);
    CHECK_THROWS_AS(HashFunction::create(6, 4, 0, 0), ConfigError);
}

TEST_CASE("lazy replacements persist through serialization") {
    HashFunction h = frozen_example();
    const std::uint64_t r3 = h.eval(3);

    const std::vector<std::uint8_t> bytes = h.serialize();
    HashFunction back = HashFunction::deserialize(bytes);
    CHECK(back.eval(3) == r3);
    CHECK(back.eval(1) == 4);
    CHECK(back.eval(2) == 3);
    CHECK(back.serialize() == h.serialize());
}

TEST_CASE("lazy mode draws from one shared stream") {
    // Fresh instance, same seed: the replacement is reproducible.
    HashFunction a = frozen_example();
    HashFunction b = frozen_example();
    CHECK(a.eval(3) == b.eval(3));
    CHECK(a.stream_counter() == b.stream_counter());
    CHECK(a.stream_counter() > 0); // the draw consumed stream positions
}

TEST_CASE("derived mode is order-independent and stateless") {
    const auto make = [] {
        return HashFunction::from_parts(6, 4, 2, 7, 11, {3, 2}, ReplacementMode::Derived, 0, {});
    };
    HashFunction fwd = make();
    HashFunction rev = make();
    std::map<std::uint64_t, std::uint64_t> fwd_vals, rev_vals;
    for (std::uint64_t x = 1; x <= 4; ++x) fwd_vals[x] = fwd.eval(x);
    for (std::uint64_t x = 4; x >= 1; --x) rev_vals[x] = rev.eval(x);
    CHECK(fwd_vals == rev_vals);
    CHECK(fwd.replacements().empty());
    CHECK(fwd.stream_counter() == 0);
    CHECK(fwd.serialize() == make().serialize()); // evaluation left no trace
}

TEST_CASE("replacement store never exceeds t over the whole domain") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        HashFunction h = HashFunction::create(3, 60, 4, seed);
        for (std::uint64_t x = 1; x <= 60; ++x) {
            const std::uint64_t v = h.eval(x);
            CHECK(v >= 1);
            CHECK(v <= 3);
        }
        CHECK(h.replacements().size() <= 4);
    }
}

TEST_CASE("serialization layout starts with magic, version, mode") {
    const HashFunction h = frozen_example();
    const std::vector<std::uint8_t> bytes = h.serialize();
    REQUIRE(bytes.size() >= 5);
    CHECK(bytes[0] == 'O');
    CHECK(bytes[1] == 'A');
    CHECK(bytes[2] == 'H');
    CHECK(bytes[3] == 1);
    CHECK(bytes[4] == 0); // LazyCache

    // Full frozen encoding: n=6, m=4, t=2, p=7, seed 0, coeffs 3 and 2,
    // empty store, counter 0.
    CHECK(bytes == std::vector<std::uint8_t>{'O', 'A', 'H', 1, 0, 6, 4, 2, 7, 0, 0, 0, 0, 0, 0,
                                             0, 0, 3, 2, 0, 0});
}

TEST_CASE("deserialize is strict") {
    const std::vector<std::uint8_t> good = frozen_example().serialize();

    auto reject = [](std::vector<std::uint8_t> bytes) {
        CHECK_THROWS_AS(HashFunction::deserialize(bytes), ConfigError);
    };

    reject({});
    reject({'O', 'A', 'H'});

    std::vector<std::uint8_t> bad = good;
    bad[0] = 'X';
    reject(bad); // magic

    bad = good;
    bad[3] = 2;
    reject(bad); // version

    bad = good;
    bad[4] = 9;
    reject(bad); // mode

    bad = good;
    bad.push_back(0);
    reject(bad); // trailing byte

    bad = good;
    bad.pop_back();
    reject(bad); // truncated

    bad = good;
    bad[17] = 9; // first coefficient 9 >= p = 7
    reject(bad);

    // Overlong varint: n = 6 as two bytes (0x86, 0x00).
    bad = good;
    bad[5] = 0x86;
    bad.insert(bad.begin() + 6, 0x00);
    reject(bad);

    CHECK_NOTHROW(HashFunction::deserialize(good));
}

TEST_CASE("from_parts validates every invariant") {
    using V = std::vector<std::uint64_t>;
    using Store = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
    const auto ok = [] {
        return HashFunction::from_parts(6, 4, 2, 7, 0, {3, 2}, ReplacementMode::LazyCache, 0, {});
    };
    CHECK_NOTHROW(ok());
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 8, 0, V{3, 2}, ReplacementMode::LazyCache,
                                             0, Store{}),
                    ConfigError); // 8 not prime
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 11, 0, V{3, 2}, ReplacementMode::LazyCache,
                                             0, Store{}),
                    ConfigError); // 11 != 1 (mod 6)
    CHECK_THROWS_AS(HashFunction::from_parts(6, 8, 2, 7, 0, V{3, 2}, ReplacementMode::LazyCache,
                                             0, Store{}),
                    ConfigError); // p <= m
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 7, 0, V{3}, ReplacementMode::LazyCache, 0,
                                             Store{}),
                    ConfigError); // wrong coefficient count
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 7, 0, V{3, 7}, ReplacementMode::LazyCache,
                                             0, Store{}),
                    ConfigError); // coefficient out of range
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 7, 0, V{3, 2}, ReplacementMode::LazyCache,
                                             0, Store{{1, 1}, {1, 2}}),
                    ConfigError); // duplicate store input
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 7, 0, V{3, 2}, ReplacementMode::LazyCache,
                                             0, Store{{2, 1}, {1, 2}}),
                    ConfigError); // unsorted store
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 7, 0, V{3, 2}, ReplacementMode::LazyCache,
                                             0, Store{{1, 1}, {2, 2}, {3, 3}}),
                    ConfigError); // store larger than t
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 7, 0, V{3, 2}, ReplacementMode::LazyCache,
                                             0, Store{{5, 1}}),
                    ConfigError); // input outside [1, m]
    CHECK_THROWS_AS(HashFunction::from_parts(6, 4, 2, 7, 0, V{3, 2}, ReplacementMode::LazyCache,
                                             0, Store{{1, 7}}),
                    ConfigError); // value outside [1, n]
}

TEST_CASE("eval rejects out-of-domain inputs") {
    HashFunction h = frozen_example();
    CHECK_THROWS_AS(h.eval(0), ConfigError);
    CHECK_THROWS_AS(h.eval(5), ConfigError);
}

TEST_CASE("synchronized wrapper serializes access") {
    SynchronizedHash sync(frozen_example());
    CHECK(sync.eval(1) == 4);
    CHECK(sync.eval(3) >= 1);
    CHECK(sync.snapshot().replacements().size() == 1);
}
