#pragma once

#include <unordered_map>

#include "idem/idempotent.hpp"

namespace idem::detail {

// Lazily computed d_K values for one modulus. Each entry is built
// independently via CRT, never from other table entries.
class IdempotentTable {
public:
    explicit IdempotentTable(FactoredModulus m) : m_(std::move(m)) {}

    const BigInt& operator()(IndexSet s)
    {
        auto it = cache_.find(s.bits());
        if (it == cache_.end())
            it = cache_.emplace(s.bits(), idempotent_from_set(m_, s).value()).first;
        return it->second;
    }

    const FactoredModulus& modulus() const noexcept { return m_; }

private:
    FactoredModulus m_;
    std::unordered_map<std::uint64_t, BigInt> cache_;
};

inline BigInt pow2(unsigned long e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

} // namespace idem::detail
