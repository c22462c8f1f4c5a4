#pragma once

// Brute-force reference computations used by the test suites. None of these
// touch the library's CRT, idempotent or exponentiation code.

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "idem/arithmetic.hpp"

namespace oracle {

using u64 = std::uint64_t;

inline std::vector<std::pair<u64, unsigned>> factor(u64 n)
{
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline std::vector<u64> idempotents(u64 m)
{
    std::vector<u64> out;
    for (u64 x = 0; x < m; ++x)
        if (x * x % m == x)
            out.push_back(x);
    return out;
}

/// The x in [0, m) with x^2 = x, x = 0 mod every prime power in `zero` and
/// x = 1 mod the rest, found by scanning.
inline u64 idempotent_by_pattern(u64 m, const std::vector<u64>& prime_powers, std::uint64_t mask)
{
    for (u64 x = 0; x < m; ++x) {
        if (x * x % m != x)
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < prime_powers.size() && ok; ++i)
            ok = x % prime_powers[i] == (((mask >> i) & 1) ? 0 : 1 % prime_powers[i]);
        if (ok)
            return x;
    }
    return m;  // not found
}

inline u64 inverse_by_scan(u64 a, u64 n)
{
    for (u64 x = 0; x < n; ++x)
        if (a % n * x % n == 1 % n)
            return x;
    return n;
}

inline u64 crt_by_scan(const std::vector<std::pair<u64, u64>>& system)
{
    u64 total = 1;
    for (auto [r, n] : system)
        total *= n;
    for (u64 x = 0; x < total; ++x) {
        bool ok = true;
        for (auto [r, n] : system)
            ok = ok && x % n == r;
        if (ok)
            return x;
    }
    return total;
}

inline u64 power_by_repetition(u64 b, u64 e, u64 n)
{
    u64 r = 1 % n;
    for (u64 i = 0; i < e; ++i)
        r = r * (b % n) % n;
    return r;
}

/// Independent square-and-multiply over 128-bit products.
inline u64 pow_u64(u64 b, u64 e, u64 n)
{
    unsigned __int128 r = 1 % n;
    unsigned __int128 x = b % n;
    while (e) {
        if (e & 1)
            r = r * x % n;
        x = x * x % n;
        e >>= 1;
    }
    return static_cast<u64>(r);
}

inline mpz_class gmp_powm(const mpz_class& b, const mpz_class& e, const mpz_class& n)
{
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline u64 count_units(u64 n)
{
    u64 c = 0;
    for (u64 x = 1; x < n; ++x)
        c += std::gcd(x, n) == 1;
    return c;
}

inline u64 max_unit_order(u64 n)
{
    u64 best = 1;
    for (u64 u = 1; u < n; ++u) {
        if (std::gcd(u, n) != 1)
            continue;
        u64 k = 1, x = u % n;
        while (x != 1 % n) {
            x = x * u % n;
            ++k;
        }
        best = std::max(best, k);
    }
    return best;
}

/// Sequence a, a^2, ... up to the first repeated value.
inline std::pair<std::vector<u64>, std::vector<u64>> tail_and_cycle(u64 a, u64 m)
{
    std::map<u64, std::size_t> seen;
    std::vector<u64> seq;
    u64 x = a % m;
    while (!seen.count(x)) {
        seen[x] = seq.size();
        seq.push_back(x);
        x = x * (a % m) % m;
    }
    const auto start = seen[x];
    return {{seq.begin(), seq.begin() + static_cast<long>(start)},
            {seq.begin() + static_cast<long>(start), seq.end()}};
}

/// Same as above with a caller-owned position table of size m, every entry
/// equal to m on entry; the entries touched are restored before returning.
inline std::pair<std::vector<u64>, std::vector<u64>> tail_and_cycle(u64 a, u64 m, std::vector<u64>& position)
{
    std::vector<u64> seq;
    u64 x = a % m;
    while (position[x] == m) {
        position[x] = seq.size();
        seq.push_back(x);
        x = x * (a % m) % m;
    }
    const auto start = static_cast<long>(position[x]);
    for (u64 v : seq)
        position[v] = m;
    return {{seq.begin(), seq.begin() + start}, {seq.begin() + start, seq.end()}};
}

inline std::vector<u64> primes_below(u64 n)
{
    std::vector<bool> composite(n, false);
    std::vector<u64> out;
    for (u64 i = 2; i < n; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (u64 j = i * i; j < n; j += i)
            composite[j] = true;
    }
    return out;
}

/// A random factored modulus with `r` distinct primes and every prime power
/// at most `max_prime_power`.
inline idem::FactoredModulus random_modulus(std::mt19937_64& rng, unsigned r, u64 max_prime_power,
                                           bool odd = false)
{
    static const auto primes = primes_below(1u << 20);
    std::set<u64> chosen;
    std::vector<idem::PrimePower> factors;
    std::size_t limit = 0;
    while (limit < primes.size() && primes[limit] <= max_prime_power)
        ++limit;
    // Bias toward small primes so that higher exponents appear.
    while (chosen.size() < r) {
        const std::size_t bound = (rng() % 2) ? std::min<std::size_t>(limit, 12) : limit;
        const u64 p = primes[rng() % bound];
        if ((odd && p == 2) || !chosen.insert(p).second)
            continue;
        unsigned max_e = 0;
        for (u64 q = p; q <= max_prime_power; q *= p)
            ++max_e;
        const unsigned e = 1 + static_cast<unsigned>(rng() % max_e);
        factors.push_back({mpz_class(static_cast<unsigned long>(p)), e});
    }
    return idem::FactoredModulus::from_factors(std::move(factors));
}

} // namespace oracle
