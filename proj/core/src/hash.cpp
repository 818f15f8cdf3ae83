#include "oatk/hash.hpp"

#include <algorithm>
#include <string>

#include "oatk/errors.hpp"
#include "oatk/serialize.hpp"

namespace oatk {

namespace {

constexpr std::uint8_t kMagic[3] = {'O', 'A', 'H'};
constexpr std::uint8_t kVersion = 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % p);
}

// Replacement sub-stream for Derived mode, keyed by (seed, x); draws do not
// touch the function's main stream.
std::uint64_t derived_replacement(std::uint64_t seed, std::uint64_t x, std::uint64_t n) {
    CounterRng sub(derive_seed(seed, x ^ 0xa5c152f7d31bd1e5ULL));
    return 1 + sub.below(n);
}

} // namespace

HashFunction HashFunction::create(std::uint64_t n, std::uint64_t m, std::uint32_t t,
                                  std::uint64_t seed, const CreateOptions& opts) {
    if (n < 2) throw ConfigError("hash: alphabet size must be >= 2");
    if (t < 1 || t > m) throw ConfigError("hash: need 1 <= t <= m");

    ConstructionPrimeOptions popts;
    popts.mode = opts.prime_mode;
    popts.seed = derive_seed(seed, 0x70);
    popts.nu_num = opts.nu_num;
    popts.nu_den = opts.nu_den;
    const std::uint64_t p = find_construction_prime(n, m, popts);

    HashFunction h;
    h.n_ = n;
    h.m_ = m;
    h.t_ = t;
    h.p_ = p;
    h.seed_ = seed;
    h.mode_ = opts.mode;
    h.rng_ = CounterRng(seed);
    h.coeffs_.resize(t);
    for (std::uint32_t i = 0; i < t; ++i) h.coeffs_[i] = h.rng_.below(p);
    return h;
}

HashFunction HashFunction::from_parts(
    std::uint64_t n, std::uint64_t m, std::uint32_t t, std::uint64_t p, std::uint64_t seed,
    std::vector<std::uint64_t> coefficients, ReplacementMode mode, std::uint64_t stream_counter,
    std::vector<std::pair<std::uint64_t, std::uint64_t>> replacements) {
    if (n < 2) throw ConfigError("hash: alphabet size must be >= 2");
    if (t < 1 || t > m) throw ConfigError("hash: need 1 <= t <= m");
    if (!is_prime(p) || p >= (std::uint64_t{1} << 62))
        throw ConfigError("hash: modulus must be a prime below 2^62");
    if (p % n != 1) throw ConfigError("hash: modulus must be == 1 (mod n)");
    if (p <= m) throw ConfigError("hash: modulus must exceed the domain size");
    if (coefficients.size() != t) throw ConfigError("hash: expected exactly t coefficients");
    for (std::uint64_t c : coefficients)
        if (c >= p) throw ConfigError("hash: coefficient out of field range");
    if (replacements.size() > t)
        throw ConfigError("hash: replacement store larger than t entries");
    for (std::size_t i = 0; i < replacements.size(); ++i) {
        const auto& [x, v] = replacements[i];
        if (x < 1 || x > m) throw ConfigError("hash: replacement input outside [1, m]");
        if (v < 1 || v > n) throw ConfigError("hash: replacement value outside [1, n]");
        if (i > 0 && replacements[i - 1].first >= x)
            throw ConfigError("hash: replacement store must be sorted by input, no duplicates");
    }

    HashFunction h;
    h.n_ = n;
    h.m_ = m;
    h.t_ = t;
    h.p_ = p;
    h.seed_ = seed;
    h.mode_ = mode;
    h.coeffs_ = std::move(coefficients);
    h.store_ = std::move(replacements);
    h.rng_ = CounterRng(seed, stream_counter);
    return h;
}

std::uint64_t HashFunction::eval(std::uint64_t x, EvalStats* stats) {
    if (x < 1 || x > m_) throw ConfigError("hash: input outside [1, m]");

    const auto it = std::lower_bound(
        store_.begin(), store_.end(), x,
        [](const std::pair<std::uint64_t, std::uint64_t>& e, std::uint64_t key) {
            return e.first < key;
        });
    if (it != store_.end() && it->first == x) return it->second;

    // g = (sum_i a_i x^i) - x^t mod p, by Horner on the monic-negated degree-t
    // polynomial: exactly t multiply-adds.
    std::uint64_t g = p_ - 1;
    for (std::uint32_t i = t_; i-- > 0;) {
        g = mulmod(g, x, p_);
        g += coeffs_[i];
        if (g >= p_) g -= p_;
        if (stats) ++stats->mul_adds;
    }

    if (g != 0) return 1 + ((g + p_ - 1) % p_) % n_;

    // h(x) would equal the excluded value x^t: uniform replacement.
    std::uint64_t value;
    if (mode_ == ReplacementMode::Derived) {
        value = derived_replacement(seed_, x, n_);
        if (stats) ++stats->replacement_draws;
        return value;
    }
    value = 1 + rng_.below(n_);
    if (stats) ++stats->replacement_draws;
    if (store_.size() >= t_)
        throw std::logic_error("hash: more than t inputs demanded replacement");
    store_.insert(it, {x, value});
    return value;
}

std::vector<std::uint8_t> HashFunction::serialize() const {
    std::vector<std::uint8_t> out;
    out.push_back(kMagic[0]);
    out.push_back(kMagic[1]);
    out.push_back(kMagic[2]);
    out.push_back(kVersion);
    out.push_back(static_cast<std::uint8_t>(mode_));
    put_varint(out, n_);
    put_varint(out, m_);
    put_varint(out, t_);
    put_varint(out, p_);
    put_u64_le(out, seed_);
    for (std::uint64_t c : coeffs_) put_varint(out, c);
    put_varint(out, store_.size());
    for (const auto& [x, v] : store_) {
        put_varint(out, x);
        put_varint(out, v);
    }
    put_varint(out, rng_.counter());
    return out;
}

HashFunction HashFunction::deserialize(std::span<const std::uint8_t> bytes) {
    std::size_t pos = 0;
    if (bytes.size() < 5 || bytes[0] != kMagic[0] || bytes[1] != kMagic[1] ||
        bytes[2] != kMagic[2])
        throw ConfigError("hash: not a serialized hash function");
    if (bytes[3] != kVersion) throw ConfigError("hash: unsupported format version");
    const std::uint8_t mode_byte = bytes[4];
    if (mode_byte > 1) throw ConfigError("hash: unknown replacement mode");
    pos = 5;

    const std::uint64_t n = get_varint(bytes, pos);
    const std::uint64_t m = get_varint(bytes, pos);
    const std::uint64_t t64 = get_varint(bytes, pos);
    const std::uint64_t p = get_varint(bytes, pos);
    const std::uint64_t seed = get_u64_le(bytes, pos);
    if (t64 > 0xffffffffULL) throw ConfigError("hash: strength out of range");
    const std::uint32_t t = static_cast<std::uint32_t>(t64);
    std::vector<std::uint64_t> coeffs(t);
    for (std::uint32_t i = 0; i < t; ++i) coeffs[i] = get_varint(bytes, pos);
    const std::uint64_t entries = get_varint(bytes, pos);
    if (entries > t64) throw ConfigError("hash: replacement store larger than t entries");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> store;
    store.reserve(static_cast<std::size_t>(entries));
    for (std::uint64_t i = 0; i < entries; ++i) {
        const std::uint64_t x = get_varint(bytes, pos);
        const std::uint64_t v = get_varint(bytes, pos);
        store.emplace_back(x, v);
    }
    const std::uint64_t counter = get_varint(bytes, pos);
    if (pos != bytes.size()) throw ConfigError("hash: trailing bytes after the encoding");

    return from_parts(n, m, t, p, seed, std::move(coeffs),
                      static_cast<ReplacementMode>(mode_byte), counter, std::move(store));
}

} // namespace oatk
