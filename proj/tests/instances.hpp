#pragma once
// Random parameter instances for the identity sweeps. Every generated
// instance is inside the identity's accepted range.
#include <optional>
#include <random>
#include <vector>

#include "idem/identities.hpp"
#include "idem/lattice.hpp"

namespace instances {

using idem::IdentityId;
using idem::IdentityParams;
using idem::IndexSet;

inline IndexSet random_subset(std::mt19937_64& rng, IndexSet of)
{
    return IndexSet(rng() & of.bits());
}

inline IndexSet random_between(std::mt19937_64& rng, IndexSet lower, IndexSet upper)
{
    return lower | random_subset(rng, upper - lower);
}

/// A random valid instance of a base identity over a modulus of rank r, or
/// nullopt when the identity has no valid instance at that rank.
inline std::optional<IdentityParams> random_base_params(std::mt19937_64& rng, IdentityId id, unsigned r)
{
    const IndexSet R = IndexSet::full(r);
    switch (id) {
    case IdentityId::ComplementSum:
        return IdentityParams{.I = random_subset(rng, R)};
    case IdentityId::PrimitiveSum:
        return IdentityParams{.J = random_subset(rng, R)};
    case IdentityId::TopLevelSum:
    case IdentityId::AllIdempotentSum:
        return IdentityParams{};
    case IdentityId::DisjointUnionSum: {
        const IndexSet J = random_subset(rng, R);
        const unsigned parts = 1 + static_cast<unsigned>(rng() % (J.size() + 2));
        IdentityParams p{.J = J};
        p.sets.assign(parts, IndexSet{});
        for (unsigned i : J.members()) {
            auto& block = p.sets[rng() % parts];
            block = block.with(i);
        }
        return p;
    }
    case IdentityId::LevelSum:
        return IdentityParams{.k = static_cast<unsigned>(rng() % r)};
    case IdentityId::BelowNLevels: {
        if (r < 2)
            return std::nullopt;
        IndexSet I;
        do
            I = random_subset(rng, R);
        while (I.size() < 2);
        return IdentityParams{.I = I, .n = 1 + static_cast<unsigned>(rng() % (I.size() - 1))};
    }
    case IdentityId::SublatticeSum: {
        IndexSet I;
        do
            I = random_subset(rng, R);
        while (I.empty());
        return IdentityParams{.I = I, .k = I.size()};
    }
    case IdentityId::OddSumIdempotentCriterion:
        return IdentityParams{.I = random_subset(rng, R), .J = random_subset(rng, R)};
    default:
        return std::nullopt;
    }
}

/// A random valid instance of a GEN_* identity on L_{m,S,T}.
inline std::optional<IdentityParams> random_general_params(std::mt19937_64& rng, IdentityId id,
                                                           IndexSet S, IndexSet T)
{
    const IndexSet free = S - T;
    const unsigned s = S.size();
    const unsigned t = T.size();
    auto element = [&] { return random_between(rng, T, S); };
    IdentityParams p;
    switch (id) {
    case IdentityId::GenProduct: {
        const unsigned count = 1 + static_cast<unsigned>(rng() % 4);
        for (unsigned i = 0; i < count; ++i)
            p.sets.push_back(element());
        break;
    }
    case IdentityId::GenUnionSum:
        p.I = element();
        p.J = element();
        break;
    case IdentityId::GenDisjointSum: {
        const IndexSet J = element();
        const IndexSet own = J - T;
        const unsigned parts = 1 + static_cast<unsigned>(rng() % (own.size() + 2));
        p.J = J;
        p.sets.assign(parts, T);
        for (unsigned i : own.members()) {
            auto& block = p.sets[rng() % parts];
            block = block.with(i);
        }
        break;
    }
    case IdentityId::GenDualSum:
        p.I = element();
        break;
    case IdentityId::GenSubsetSum:
        if (free.empty())
            return std::nullopt;
        do
            p.I = element();
        while (*p.I == T);
        break;
    case IdentityId::GenPrimitiveSum:
        if (free.empty())
            return std::nullopt;
        do
            p.J = element();
        while (*p.J == S);
        break;
    case IdentityId::GenLevelSum:
        if (free.empty())
            return std::nullopt;
        p.k = t + static_cast<unsigned>(rng() % (s - t));
        break;
    case IdentityId::GenBelowNLevels: {
        if (free.size() < 2)
            return std::nullopt;
        IndexSet I;
        do
            I = element();
        while (I.size() < t + 2);
        p.I = I;
        p.n = 1 + static_cast<unsigned>(rng() % (I.size() - t - 1));
        break;
    }
    case IdentityId::GenSublatticeSum:
        if (free.empty())
            return std::nullopt;
        do
            p.I = element();
        while (*p.I == T);
        p.k = p.I->size();
        break;
    default:
        return std::nullopt;
    }
    p.S = S;
    p.T = T;
    return p;
}

} // namespace instances
