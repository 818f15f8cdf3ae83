#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace oatk {

/// Finite field F_{p^e}, characteristic p < 2^62, with elements encoded as
/// integers in [0, p^e): the base-p digits of an encoding are the coefficients
/// of the element's polynomial representation (digit i = coefficient of x^i).
/// For e >= 2 the modulus is the monic irreducible polynomial of degree e
/// whose non-leading coefficients, read as a base-p integer, are smallest.
/// All products go through 128-bit intermediates; no operation overflows.
class FieldCtx {
public:
    /// F_2; placeholder for default-constructed aggregates.
    FieldCtx() : p_(2), e_(1), q_(2) {}

    /// Builds F_{p^e}. Throws ConfigError if p is not prime, e == 0, or
    /// p^e >= 2^62.
    static FieldCtx make(std::uint64_t p, std::uint32_t e = 1);

    std::uint64_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return e_; }
    std::uint64_t order() const noexcept { return q_; }

    /// Modulus coefficients c_0..c_e (monic: c_e = 1). Empty for e == 1.
    const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;

    /// Multiplicative inverse. Throws ConfigError for a == 0.
    std::uint64_t inv(std::uint64_t a) const;

    /// Square-and-multiply; pow(a, 0) == 1 including a == 0.
    std::uint64_t pow(std::uint64_t a, std::uint64_t k) const;

    /// Evaluates sum coeffs[i] * x^i by Horner's rule.
    std::uint64_t eval_poly(std::span<const std::uint64_t> coeffs, std::uint64_t x) const;

private:
    FieldCtx(std::uint64_t p, std::uint32_t e, std::uint64_t q, std::vector<std::uint64_t> modulus)
        : p_(p), e_(e), q_(q), modulus_(std::move(modulus)) {}

    void to_digits(std::uint64_t a, std::uint64_t* out) const;
    std::uint64_t from_digits(const std::uint64_t* digits) const;

    std::uint64_t p_;
    std::uint32_t e_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
};

} // namespace oatk
