#include "idem/arithmetic.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "idem/error.hpp"

namespace idem {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool fits_u64(const BigInt& x)
{
    return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& x)
{
    // mpz_get_ui is 64-bit on LP64 targets.
    static_assert(sizeof(unsigned long) == 8);
    return mpz_get_ui(x.get_mpz_t());
}

} // namespace

FactoredModulus FactoredModulus::from_factors(std::vector<PrimePower> factors)
{
    if (factors.empty())
        throw Error(Errc::InputTooSmall, "a modulus needs at least one prime factor");
    if (factors.size() > max_factor_count)
        throw Error(Errc::CapExceeded, "more than 64 distinct prime factors");

    std::sort(factors.begin(), factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });

    auto data = std::make_shared<Data>();
    data->m = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        if (f.exponent == 0)
            throw Error(Errc::BadParams, "exponent of " + f.prime.get_str() + " is zero");
        if (i > 0 && factors[i - 1].prime == f.prime)
            throw Error(Errc::BadParams, "prime " + f.prime.get_str() + " listed twice");
        if (!is_prime(f.prime))
            throw Error(Errc::BadParams, f.prime.get_str() + " is not prime");
        BigInt q;
        mpz_pow_ui(q.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        data->m *= q;
        data->prime_powers.push_back(std::move(q));
        data->max_exponent = std::max(data->max_exponent, f.exponent);
    }
    data->factors = std::move(factors);
    data->fits_word = fits_u64(data->m);
    data->m_word = data->fits_word ? to_u64(data->m) : 0;
    return FactoredModulus(std::move(data));
}

const BigInt& FactoredModulus::prime(unsigned i) const
{
    if (i == 0 || i > rank())
        throw Error(Errc::IndexOutOfRange, "index " + std::to_string(i));
    return data_->factors[i - 1].prime;
}

unsigned FactoredModulus::exponent(unsigned i) const
{
    if (i == 0 || i > rank())
        throw Error(Errc::IndexOutOfRange, "index " + std::to_string(i));
    return data_->factors[i - 1].exponent;
}

const BigInt& FactoredModulus::prime_power(unsigned i) const
{
    if (i == 0 || i > rank())
        throw Error(Errc::IndexOutOfRange, "index " + std::to_string(i));
    return data_->prime_powers[i - 1];
}

bool is_prime(const BigInt& p, const Limits& limits)
{
    if (p < 2)
        return false;
    if (p < 4)
        return true;
    if (mpz_even_p(p.get_mpz_t()))
        return false;
    // Small candidates are settled by trial division; larger ones go to GMP's
    // BPSW test, which has no known counterexamples and none below 2^64.
    const std::uint64_t bound = std::min<std::uint64_t>(limits.trial_division_bound, 1u << 20);
    if (p <= bound) {
        const std::uint64_t n = to_u64(p);
        for (std::uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0)
                return false;
        return true;
    }
    return mpz_probab_prime_p(p.get_mpz_t(), 25) != 0;
}

FactoredModulus factorize(const BigInt& n, const Limits& limits)
{
    if (n < 2)
        throw Error(Errc::InputTooSmall, "modulus must be at least 2, got " + n.get_str());

    std::vector<PrimePower> factors;
    BigInt rest = n;
    auto strip = [&](unsigned long d) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
            ++e;
        }
        if (e > 0)
            factors.push_back({BigInt(d), e});
    };

    strip(2);
    unsigned long d = 3;
    const std::uint64_t bound = limits.trial_division_bound;
    for (; d <= bound; d += 2) {
        if (BigInt(d) * d > rest)
            break;
        strip(d);
    }
    if (rest > 1) {
        // Either d^2 > rest (rest is prime) or the bound stopped us.
        if (BigInt(d) * d > rest || is_prime(rest, limits))
            factors.push_back({rest, 1});
        else
            throw Error(Errc::FactorizationLimitExceeded,
                        "cofactor " + rest.get_str() + " of " + n.get_str() +
                            " is unresolved after trial division to " + std::to_string(bound) +
                            "; supply the factorization explicitly");
    }
    return FactoredModulus::from_factors(std::move(factors));
}

BigInt reduce(const BigInt& a, const BigInt& n)
{
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& n)
{
    if (n < 2)
        throw Error(Errc::InputTooSmall, "modulus must be at least 2");
    BigInt x;
    if (mpz_invert(x.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0)
        throw Error(Errc::NotInvertible, a.get_str() + " has no inverse modulo " + n.get_str());
    return reduce(x, n);
}

BigInt crt_combine(std::span<const Congruence> system)
{
    BigInt x = 0;
    BigInt acc = 1;
    for (const auto& [residue, modulus] : system) {
        if (modulus < 1)
            throw Error(Errc::BadParams, "CRT modulus must be positive");
        if (gcd(acc, modulus) != 1)
            throw Error(Errc::ModuliNotCoprime,
                        modulus.get_str() + " shares a factor with earlier moduli");
        if (modulus == 1)
            continue;
        // x + acc*t = residue (mod modulus)
        BigInt t = reduce(residue - x, modulus);
        t *= mod_inverse(acc % modulus, modulus);
        t = reduce(t, modulus);
        x += acc * t;
        acc *= modulus;
    }
    return x;
}

BigInt pow_mod(const BigInt& base, const BigInt& exponent, const BigInt& modulus)
{
    if (modulus < 2)
        throw Error(Errc::InputTooSmall, "modulus must be at least 2");
    if (sgn(exponent) < 0)
        throw Error(Errc::BadParams, "negative exponent");

    BigInt result = 1;
    BigInt b = reduce(base, modulus);
    const auto bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result *= result;
        result %= modulus;
        if (mpz_tstbit(exponent.get_mpz_t(), i)) {
            result *= b;
            result %= modulus;
        }
    }
    return result;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus)
{
    if (modulus < 2)
        throw Error(Errc::InputTooSmall, "modulus must be at least 2");
    std::uint64_t result = 1;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1)
            result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exponent >>= 1;
    }
    return result;
}

BigInt euler_phi_prime_power(const BigInt& p, unsigned e)
{
    if (e == 0)
        throw Error(Errc::BadParams, "exponent must be positive");
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e - 1);
    return r * (p - 1);
}

BigInt carmichael_prime_power(const BigInt& p, unsigned e)
{
    if (p == 2 && e >= 3) {
        BigInt r;
        mpz_ui_pow_ui(r.get_mpz_t(), 2, e - 2);
        return r;
    }
    return euler_phi_prime_power(p, e);
}

BigInt binomial(unsigned long n, unsigned long k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt parse_bigint(std::string_view text)
{
    text = trim(text);
    if (text.empty() || !std::all_of(text.begin(), text.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error(Errc::ParseError, "expected a nonnegative decimal integer, got '" +
                                          std::string(text) + "'");
    return BigInt(std::string(text), 10);
}

std::string to_text(const FactoredModulus& m)
{
    std::string out;
    for (const auto& f : m.factors()) {
        if (!out.empty())
            out += '*';
        out += f.prime.get_str();
        out += '^';
        out += std::to_string(f.exponent);
    }
    return out;
}

FactoredModulus parse_factored(std::string_view text, const Limits&)
{
    std::vector<PrimePower> factors;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('*', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto term = trim(text.substr(start, end - start));
        auto caret = term.find('^');
        PrimePower f;
        f.prime = parse_bigint(term.substr(0, caret));
        if (caret != std::string_view::npos) {
            const BigInt e = parse_bigint(term.substr(caret + 1));
            if (e < 1 || e > std::numeric_limits<unsigned>::max())
                throw Error(Errc::ParseError, "bad exponent in '" + std::string(term) + "'");
            f.exponent = static_cast<unsigned>(e.get_ui());
        }
        factors.push_back(std::move(f));
        start = end + 1;
    }
    return FactoredModulus::from_factors(std::move(factors));
}

FactoredModulus parse_modulus(std::string_view text, const Limits& limits)
{
    text = trim(text);
    if (text.find_first_of("^*") != std::string_view::npos)
        return parse_factored(text, limits);
    return factorize(parse_bigint(text), limits);
}

} // namespace idem
