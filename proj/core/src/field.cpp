#include "oatk/field.hpp"

#include <string>

#include "oatk/errors.hpp"
#include "oatk/primes.hpp"

namespace oatk {

namespace {

constexpr std::uint64_t kFieldLimit = std::uint64_t{1} << 62;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    while (k) {
        if (k & 1) acc = mulmod(acc, a, p);
        a = mulmod(a, a, p);
        k >>= 1;
    }
    return acc;
}

// Dense coefficient vectors over F_p, ascending degree. Inside the modulus
// search p < 2^31 (since p^e < 2^62 with e >= 2), so 128-bit accumulators
// never overflow.
using Poly = std::vector<std::uint64_t>;

// a * b reduced by the monic modulus f of degree e; a and b have size e.
Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    const std::size_t e = f.size() - 1;
    std::vector<__uint128_t> conv(2 * e - 1, 0);
    for (std::size_t i = 0; i < e; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < e; ++j) conv[i + j] += static_cast<__uint128_t>(a[i]) * b[j];
    }
    Poly red(2 * e - 1);
    for (std::size_t i = 0; i < red.size(); ++i) red[i] = static_cast<std::uint64_t>(conv[i] % p);
    for (std::size_t i = red.size(); i-- > e;) {
        const std::uint64_t lead = red[i];
        if (lead == 0) continue;
        red[i] = 0;
        for (std::size_t j = 0; j < e; ++j) {
            const std::uint64_t prod = mulmod(lead, f[j], p);
            std::uint64_t& c = red[i - e + j];
            c = (c >= prod) ? c - prod : c + p - prod;
        }
    }
    red.resize(e);
    return red;
}

Poly powmod_poly(Poly base, std::uint64_t k, const Poly& f, std::uint64_t p) {
    Poly acc(f.size() - 1, 0);
    acc[0] = 1;
    while (k) {
        if (k & 1) acc = mulmod_poly(acc, base, f, p);
        base = mulmod_poly(base, base, f, p);
        k >>= 1;
    }
    return acc;
}

int poly_degree(const Poly& a) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != 0) return static_cast<int>(i);
    return -1;
}

// Remainder of a modulo the nonzero polynomial b.
Poly rem_poly(Poly a, const Poly& b, std::uint64_t p) {
    const int db = poly_degree(b);
    const std::uint64_t lead_inv = powmod(b[static_cast<std::size_t>(db)], p - 2, p);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
        const std::uint64_t factor = mulmod(a[static_cast<std::size_t>(da)], lead_inv, p);
        for (int j = 0; j <= db; ++j) {
            const std::uint64_t prod = mulmod(factor, b[static_cast<std::size_t>(j)], p);
            std::uint64_t& c = a[static_cast<std::size_t>(da - db + j)];
            c = (c >= prod) ? c - prod : c + p - prod;
        }
    }
    return a;
}

bool coprime_with(Poly a, const Poly& f, std::uint64_t p) {
    Poly r0 = f;
    Poly r1 = std::move(a);
    while (poly_degree(r1) >= 0) {
        Poly r = rem_poly(std::move(r0), r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    return poly_degree(r0) == 0;
}

// Rabin's irreducibility test for a monic degree-e polynomial over F_p:
// x^(p^e) == x (mod f) and gcd(x^(p^(e/r)) - x, f) == 1 for every prime r | e.
bool irreducible(const Poly& f, std::uint64_t p, std::uint32_t e) {
    Poly x(e, 0);
    x[1] = 1;
    Poly pw = x;
    for (std::uint32_t k = 1; k <= e; ++k) {
        pw = powmod_poly(std::move(pw), p, f, p);
        if (k == e) return pw == x;
        if (e % k == 0 && is_prime(e / k)) {
            Poly diff(e);
            for (std::uint32_t i = 0; i < e; ++i)
                diff[i] = (pw[i] >= x[i]) ? pw[i] - x[i] : pw[i] + p - x[i];
            if (!coprime_with(std::move(diff), f, p)) return false;
        }
    }
    return true;
}

} // namespace

FieldCtx FieldCtx::make(std::uint64_t p, std::uint32_t e) {
    if (!is_prime(p)) throw ConfigError("field: characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw ConfigError("field: extension degree must be >= 1");
    __uint128_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q >= kFieldLimit) throw ConfigError("field: order p^e must be below 2^62");
    }
    std::vector<std::uint64_t> modulus;
    if (e >= 2) {
        // Smallest counter whose base-p digits give irreducible non-leading
        // coefficients of x^e + c_{e-1} x^{e-1} + ... + c_0.
        std::uint64_t combos = 1;
        for (std::uint32_t i = 0; i < e; ++i) combos *= p;
        std::vector<std::uint64_t> cand(e + 1);
        cand[e] = 1;
        bool found = false;
        for (std::uint64_t c = 0; c < combos && !found; ++c) {
            std::uint64_t rem = c;
            for (std::uint32_t i = 0; i < e; ++i) {
                cand[i] = rem % p;
                rem /= p;
            }
            if (irreducible(cand, p, e)) {
                modulus = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("field: no irreducible modulus found");
    }
    return FieldCtx(p, e, static_cast<std::uint64_t>(q), std::move(modulus));
}

void FieldCtx::to_digits(std::uint64_t a, std::uint64_t* out) const {
    for (std::uint32_t i = 0; i < e_; ++i) {
        out[i] = a % p_;
        a /= p_;
    }
}

std::uint64_t FieldCtx::from_digits(const std::uint64_t* digits) const {
    std::uint64_t a = 0;
    for (std::uint32_t i = e_; i-- > 0;) a = a * p_ + digits[i];
    return a;
}

std::uint64_t FieldCtx::add(std::uint64_t a, std::uint64_t b) const {
    if (e_ == 1) {
        const std::uint64_t s = a + b;
        return (s >= p_) ? s - p_ : s;
    }
    std::uint64_t da[64], db[64];
    to_digits(a, da);
    to_digits(b, db);
    for (std::uint32_t i = 0; i < e_; ++i) {
        da[i] += db[i];
        if (da[i] >= p_) da[i] -= p_;
    }
    return from_digits(da);
}

std::uint64_t FieldCtx::neg(std::uint64_t a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint64_t da[64];
    to_digits(a, da);
    for (std::uint32_t i = 0; i < e_; ++i)
        if (da[i] != 0) da[i] = p_ - da[i];
    return from_digits(da);
}

std::uint64_t FieldCtx::sub(std::uint64_t a, std::uint64_t b) const {
    if (e_ == 1) return (a >= b) ? a - b : a + p_ - b;
    return add(a, neg(b));
}

std::uint64_t FieldCtx::mul(std::uint64_t a, std::uint64_t b) const {
    if (e_ == 1)
        return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % p_);
    std::uint64_t da[64], db[64];
    to_digits(a, da);
    to_digits(b, db);
    __uint128_t conv[127] = {};
    for (std::uint32_t i = 0; i < e_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < e_; ++j) conv[i + j] += static_cast<__uint128_t>(da[i]) * db[j];
    }
    std::uint64_t red[127];
    for (std::uint32_t i = 0; i < 2 * e_ - 1; ++i)
        red[i] = static_cast<std::uint64_t>(conv[i] % p_);
    // Fold degrees >= e down through the monic modulus.
    for (std::uint32_t i = 2 * e_ - 2; i >= e_ && i < 127; --i) {
        const std::uint64_t lead = red[i];
        if (lead == 0) continue;
        red[i] = 0;
        for (std::uint32_t j = 0; j < e_; ++j) {
            const std::uint64_t prod =
                static_cast<std::uint64_t>(static_cast<__uint128_t>(lead) * modulus_[j] % p_);
            std::uint64_t& c = red[i - e_ + j];
            c = (c >= prod) ? c - prod : c + p_ - prod;
        }
    }
    return from_digits(red);
}

std::uint64_t FieldCtx::pow(std::uint64_t a, std::uint64_t k) const {
    std::uint64_t acc = 1;
    while (k) {
        if (k & 1) acc = mul(acc, a);
        a = mul(a, a);
        k >>= 1;
    }
    return acc;
}

std::uint64_t FieldCtx::inv(std::uint64_t a) const {
    if (a == 0) throw ConfigError("field: zero has no inverse");
    return pow(a, q_ - 2);
}

std::uint64_t FieldCtx::eval_poly(std::span<const std::uint64_t> coeffs, std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = add(mul(acc, x), coeffs[i]);
    return acc;
}

} // namespace oatk
