#pragma once

#include <span>
#include <utility>
#include <vector>

#include "idem/arithmetic.hpp"
#include "idem/index_set.hpp"

namespace idem {

/// The idempotent d_I of Z/mZ: d_I = 0 mod p_i^{e_i} for i in I and
/// d_I = 1 mod p_j^{e_j} for j outside I.
class Idempotent {
public:
    const FactoredModulus& modulus() const noexcept { return modulus_; }
    IndexSet set() const noexcept { return set_; }
    /// Least nonnegative residue d_I.
    const BigInt& value() const noexcept { return value_; }
    /// g_I = gcd(d_I, m), the product of the prime powers indexed by I.
    const BigInt& g() const noexcept { return g_; }
    /// a_I = d_I / g_I for the least nonnegative d_I; coprime to m / g_I.
    BigInt cofactor() const { return value_ / g_; }

    friend bool operator==(const Idempotent& a, const Idempotent& b)
    {
        return a.set_ == b.set_ && a.modulus_ == b.modulus_;
    }

private:
    friend Idempotent idempotent_from_set(const FactoredModulus&, IndexSet);

    Idempotent(FactoredModulus m, IndexSet s, BigInt d, BigInt g)
        : modulus_(std::move(m)), set_(s), value_(std::move(d)), g_(std::move(g)) {}

    FactoredModulus modulus_;
    IndexSet set_;
    BigInt value_;
    BigInt g_;
};

Idempotent idempotent_from_set(const FactoredModulus& m, IndexSet set);

/// g_K for an arbitrary K subset of R.
BigInt g_of(const FactoredModulus& m, IndexSet set);

/// All 2^r idempotents in ascending-bitmask order of their index sets.
std::vector<Idempotent> enumerate_idempotents(const FactoredModulus& m,
                                              const Limits& limits = default_limits);

Idempotent complement(const Idempotent& d);

/// Product of idempotents; equals the idempotent of the union of their sets.
Idempotent multiply(std::span<const Idempotent> ds);

/// (d_{I u J}, d_{I n J}), whose values sum to d_I + d_J mod m.
std::pair<Idempotent, Idempotent> add_decompose(const Idempotent& di, const Idempotent& dj);

/// (d_J - d_I) mod m, cross-checked against d_J + d_{R\I} - 1.
BigInt subtract(const Idempotent& dj, const Idempotent& di);

/// Throws MixedModuli unless both idempotents live over the same m.
void require_same_modulus(const Idempotent& a, const Idempotent& b);

void require_enumerable(const FactoredModulus& m, const Limits& limits);

} // namespace idem
