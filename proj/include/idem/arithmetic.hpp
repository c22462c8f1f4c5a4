#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "idem/limits.hpp"

namespace idem {

using BigInt = mpz_class;

/// Largest number of distinct prime factors a FactoredModulus may carry; index
/// sets are 64-bit masks.
inline constexpr unsigned max_factor_count = 64;

struct PrimePower {
    BigInt prime;
    unsigned exponent = 1;
};

/// A modulus m >= 2 with its prime-power factorization, primes ascending.
///
/// Immutable handle: copies share the underlying data, so idempotents and
/// lattices can carry their modulus by value.
class FactoredModulus {
public:
    /// Builds from an explicit factorization. Factors are sorted by prime;
    /// duplicate primes, non-primes, zero exponents and m < 2 are rejected.
    static FactoredModulus from_factors(std::vector<PrimePower> factors);

    const BigInt& value() const noexcept { return data_->m; }
    std::size_t rank() const noexcept { return data_->factors.size(); }
    std::span<const PrimePower> factors() const noexcept { return data_->factors; }

    // 1-based, matching the index set R = {1..r}.
    const BigInt& prime(unsigned i) const;
    unsigned exponent(unsigned i) const;
    const BigInt& prime_power(unsigned i) const;

    unsigned max_exponent() const noexcept { return data_->max_exponent; }

    /// True when m fits in 64 bits; enables the word-size code paths.
    bool fits_word() const noexcept { return data_->fits_word; }
    std::uint64_t word() const noexcept { return data_->m_word; }

    friend bool operator==(const FactoredModulus& a, const FactoredModulus& b)
    {
        return a.data_ == b.data_ || a.data_->m == b.data_->m;
    }

private:
    struct Data {
        BigInt m;
        std::vector<PrimePower> factors;
        std::vector<BigInt> prime_powers;
        unsigned max_exponent = 0;
        bool fits_word = false;
        std::uint64_t m_word = 0;
    };

    explicit FactoredModulus(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

    std::shared_ptr<const Data> data_;
};

/// Trial division up to limits.trial_division_bound. A cofactor left over
/// after the bound that cannot be shown prime raises FactorizationLimitExceeded.
FactoredModulus factorize(const BigInt& n, const Limits& limits = default_limits);

/// Least nonnegative x with a*x = 1 (mod n).
BigInt mod_inverse(const BigInt& a, const BigInt& n);

struct Congruence {
    BigInt residue;
    BigInt modulus;
};

/// Incremental CRT over pairwise-coprime moduli; result in [0, prod moduli).
BigInt crt_combine(std::span<const Congruence> system);

/// Square-and-multiply; b^0 = 1.
BigInt pow_mod(const BigInt& base, const BigInt& exponent, const BigInt& modulus);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

BigInt euler_phi_prime_power(const BigInt& p, unsigned e);
BigInt carmichael_prime_power(const BigInt& p, unsigned e);

/// Least nonnegative residue of a mod n (n > 0).
BigInt reduce(const BigInt& a, const BigInt& n);

BigInt binomial(unsigned long n, unsigned long k);

/// Primality check used to validate user-supplied factorizations.
bool is_prime(const BigInt& p, const Limits& limits = default_limits);

// Text form "p1^e1*p2^e2*..."; "^1" may be omitted on input.
std::string to_text(const FactoredModulus& m);
FactoredModulus parse_factored(std::string_view text, const Limits& limits = default_limits);

/// Accepts either a decimal integer (factored by trial division) or the text form.
FactoredModulus parse_modulus(std::string_view text, const Limits& limits = default_limits);

BigInt parse_bigint(std::string_view text);

} // namespace idem
