#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idem/arithmetic.hpp"
#include "idem/index_set.hpp"

namespace idem {

// The first nine entries are congruences mod m over the whole idempotent
// lattice; the GEN_* entries are their analogues mod g_S on a consistent
// sublattice L_{m,S,T} (see lattice.hpp).
enum class IdentityId {
    ComplementSum,
    PrimitiveSum,
    TopLevelSum,
    DisjointUnionSum,
    LevelSum,
    BelowNLevels,
    SublatticeSum,
    AllIdempotentSum,
    OddSumIdempotentCriterion,
    GenProduct,
    GenUnionSum,
    GenDisjointSum,
    GenDualSum,
    GenSubsetSum,
    GenPrimitiveSum,
    GenLevelSum,
    GenBelowNLevels,
    GenSublatticeSum,
};

std::string_view to_string(IdentityId id) noexcept;
IdentityId parse_identity_id(std::string_view text);
bool is_general(IdentityId id) noexcept;
std::span<const IdentityId> base_identities() noexcept;
std::span<const IdentityId> general_identities() noexcept;

/// Parameters for one identity instance. Which fields are required depends on
/// the identity; unused fields must be left empty.
struct IdentityParams {
    std::optional<IndexSet> I;
    std::optional<IndexSet> J;
    std::vector<IndexSet> sets;  // parts of a disjoint union, or product operands
    std::optional<unsigned> k;
    std::optional<unsigned> n;
    // Sublattice bounds, recorded for GEN_* identities.
    std::optional<IndexSet> S;
    std::optional<IndexSet> T;

    friend bool operator==(const IdentityParams&, const IdentityParams&) = default;
};

/// A side congruence implied by the main identity (e.g. the reduction mod g_I
/// of a sublattice sum).
struct CongruenceCheck {
    std::string label;
    BigInt modulus;
    BigInt lhs;
    BigInt rhs;
    bool holds = false;

    friend bool operator==(const CongruenceCheck&, const CongruenceCheck&) = default;
};

struct IdentityReport {
    IdentityId identity_id;
    FactoredModulus modulus;
    IdentityParams params;
    BigInt reduction_modulus;  // m, or g_S for GEN_* identities
    BigInt lhs;
    BigInt rhs;
    bool holds = false;
    std::vector<CongruenceCheck> corollaries;

    friend bool operator==(const IdentityReport&, const IdentityReport&) = default;

    bool all_hold() const
    {
        if (!holds)
            return false;
        for (const auto& c : corollaries)
            if (!c.holds)
                return false;
        return true;
    }
};

/// Evaluates both sides of a mod-m identity literally. Throws BadParams when
/// the parameters fall outside the identity's stated range.
IdentityReport verify_identity(const FactoredModulus& m, IdentityId id, const IdentityParams& params,
                               const Limits& limits = default_limits);

/// Every valid parameter instance of `id` over m (finite families only; see
/// the notes in the implementation for DISJOINT_UNION_SUM).
std::vector<IdentityParams> enumerate_params(const FactoredModulus& m, IdentityId id,
                                             const Limits& limits = default_limits);

/// All unordered partitions of `set` into nonempty blocks, each partition
/// listing its blocks by smallest member. The empty set has one (empty) partition.
std::vector<std::vector<IndexSet>> set_partitions(IndexSet set);

} // namespace idem
