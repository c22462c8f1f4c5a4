#include "idem/identities.hpp"

#include <array>
#include <functional>

#include "idem/error.hpp"
#include "idem/idempotent.hpp"
#include "idempotent_table.hpp"

namespace idem {

namespace {

struct IdentityName {
    IdentityId id;
    std::string_view name;
};

constexpr std::array<IdentityName, 18> identity_names{{
    {IdentityId::ComplementSum, "COMPLEMENT_SUM"},
    {IdentityId::PrimitiveSum, "PRIMITIVE_SUM"},
    {IdentityId::TopLevelSum, "TOP_LEVEL_SUM"},
    {IdentityId::DisjointUnionSum, "DISJOINT_UNION_SUM"},
    {IdentityId::LevelSum, "LEVEL_SUM"},
    {IdentityId::BelowNLevels, "BELOW_N_LEVELS"},
    {IdentityId::SublatticeSum, "SUBLATTICE_SUM"},
    {IdentityId::AllIdempotentSum, "ALL_IDEMPOTENT_SUM"},
    {IdentityId::OddSumIdempotentCriterion, "ODD_SUM_IDEMPOTENT_CRITERION"},
    {IdentityId::GenProduct, "GEN_PRODUCT"},
    {IdentityId::GenUnionSum, "GEN_UNION_SUM"},
    {IdentityId::GenDisjointSum, "GEN_DISJOINT_SUM"},
    {IdentityId::GenDualSum, "GEN_DUAL_SUM"},
    {IdentityId::GenSubsetSum, "GEN_SUBSET_SUM"},
    {IdentityId::GenPrimitiveSum, "GEN_PRIMITIVE_SUM"},
    {IdentityId::GenLevelSum, "GEN_LEVEL_SUM"},
    {IdentityId::GenBelowNLevels, "GEN_BELOW_N_LEVELS"},
    {IdentityId::GenSublatticeSum, "GEN_SUBLATTICE_SUM"},
}};

constexpr std::array<IdentityId, 9> base_ids{
    IdentityId::ComplementSum,    IdentityId::PrimitiveSum,  IdentityId::TopLevelSum,
    IdentityId::DisjointUnionSum, IdentityId::LevelSum,      IdentityId::BelowNLevels,
    IdentityId::SublatticeSum,    IdentityId::AllIdempotentSum,
    IdentityId::OddSumIdempotentCriterion,
};

constexpr std::array<IdentityId, 9> general_ids{
    IdentityId::GenProduct,      IdentityId::GenUnionSum,     IdentityId::GenDisjointSum,
    IdentityId::GenDualSum,      IdentityId::GenSubsetSum,    IdentityId::GenPrimitiveSum,
    IdentityId::GenLevelSum,     IdentityId::GenBelowNLevels, IdentityId::GenSublatticeSum,
};

[[noreturn]] void bad(const std::string& what)
{
    throw Error(Errc::BadParams, what);
}

IndexSet required(const std::optional<IndexSet>& s, const char* name, IndexSet universe)
{
    if (!s)
        bad(std::string("parameter ") + name + " is required");
    if (!s->subset_of(universe))
        bad(std::string("parameter ") + name + " = " + to_string(*s) + " is not a subset of " +
            to_string(universe));
    return *s;
}

void check_k(const IdentityParams& p, unsigned k)
{
    if (p.k && *p.k != k)
        bad("k = " + std::to_string(*p.k) + " does not match |I| = " + std::to_string(k));
}

bool pairwise_disjoint(const std::vector<IndexSet>& sets)
{
    IndexSet seen;
    for (auto s : sets) {
        if (!(seen & s).empty())
            return false;
        seen = seen | s;
    }
    return true;
}

void partitions_into(IndexSet rest, std::vector<IndexSet>& current,
                     std::vector<std::vector<IndexSet>>& out)
{
    if (rest.empty()) {
        out.push_back(current);
        return;
    }
    // The block holding the lowest remaining index, combined with any subset
    // of the other remaining indices.
    const IndexSet lowest(rest.bits() & (~rest.bits() + 1));
    for_each_subset(rest - lowest, [&](IndexSet extra) {
        current.push_back(lowest | extra);
        partitions_into(rest - (lowest | extra), current, out);
        current.pop_back();
    });
}

} // namespace

std::string_view to_string(IdentityId id) noexcept
{
    for (const auto& e : identity_names)
        if (e.id == id)
            return e.name;
    return "UNKNOWN";
}

IdentityId parse_identity_id(std::string_view text)
{
    for (const auto& e : identity_names)
        if (e.name == text)
            return e.id;
    throw Error(Errc::ParseError, "unknown identity '" + std::string(text) + "'");
}

bool is_general(IdentityId id) noexcept
{
    return static_cast<int>(id) >= static_cast<int>(IdentityId::GenProduct);
}

std::span<const IdentityId> base_identities() noexcept { return base_ids; }
std::span<const IdentityId> general_identities() noexcept { return general_ids; }

std::vector<std::vector<IndexSet>> set_partitions(IndexSet set)
{
    std::vector<std::vector<IndexSet>> out;
    std::vector<IndexSet> current;
    partitions_into(set, current, out);
    return out;
}

IdentityReport verify_identity(const FactoredModulus& m, IdentityId id, const IdentityParams& p,
                               const Limits& limits)
{
    if (is_general(id))
        bad(std::string(to_string(id)) + " is a sublattice identity; verify it on a ConsistentLattice");

    const auto r = static_cast<unsigned>(m.rank());
    const IndexSet R = IndexSet::full(r);
    detail::IdempotentTable d(m);
    const BigInt& mod = m.value();

    BigInt lhs = 0;
    BigInt rhs = 0;
    std::vector<CongruenceCheck> corollaries;

    auto enumerable = [&](unsigned width) {
        if (width > limits.max_enumeration_rank)
            throw Error(Errc::CapExceeded, "sum over 2^" + std::to_string(width) + " subsets");
    };

    switch (id) {
    case IdentityId::ComplementSum: {
        const auto I = required(p.I, "I", R);
        lhs = d(I) + d(R - I);
        rhs = 1;
        break;
    }
    case IdentityId::PrimitiveSum: {
        const auto J = required(p.J, "J", R);
        for (unsigned i : (R - J).members())
            lhs += d(R.without(i));
        rhs = d(J);
        break;
    }
    case IdentityId::TopLevelSum: {
        for (unsigned i = 1; i <= r; ++i)
            lhs += d(R.without(i));
        rhs = 1;
        break;
    }
    case IdentityId::DisjointUnionSum: {
        if (p.sets.empty())
            bad("DISJOINT_UNION_SUM needs at least one set");
        IndexSet J;
        for (auto s : p.sets) {
            if (!s.subset_of(R))
                bad(to_string(s) + " is not a subset of " + to_string(R));
            J = J | s;
        }
        if (!pairwise_disjoint(p.sets))
            bad("DISJOINT_UNION_SUM requires pairwise-disjoint sets");
        if (p.J && *p.J != J)
            bad("J = " + to_string(*p.J) + " is not the union of the sets");
        for (auto s : p.sets)
            lhs += d(s);
        rhs = BigInt(static_cast<unsigned long>(p.sets.size() - 1)) + d(J);
        break;
    }
    case IdentityId::LevelSum: {
        if (!p.k)
            bad("LEVEL_SUM needs k");
        const unsigned k = *p.k;
        if (k >= r)
            bad("LEVEL_SUM needs 0 <= k < r = " + std::to_string(r));
        enumerable(r);
        for_each_subset(R, [&](IndexSet J) {
            if (J.size() == k)
                lhs += d(J);
        });
        rhs = binomial(r - 1, k);
        break;
    }
    case IdentityId::BelowNLevels: {
        const auto I = required(p.I, "I", R);
        const unsigned k = I.size();
        check_k(p, k);
        if (!p.n)
            bad("BELOW_N_LEVELS needs n");
        const unsigned n = *p.n;
        if (n == 0 || n >= k)
            bad("BELOW_N_LEVELS needs 0 < n < |I| = " + std::to_string(k));
        enumerable(k);
        for_each_subset(I, [&](IndexSet J) {
            if (J.size() == k - n)
                lhs += d(J);
        });
        // Counting residues prime by prime: mod p_i^{e_i} with i in I the sum is
        // the number of J missing i, C(k-1, n-1); elsewhere it is C(k, n).
        rhs = binomial(k - 1, n - 1) + binomial(k - 1, n) * d(I);
        break;
    }
    case IdentityId::SublatticeSum: {
        const auto I = required(p.I, "I", R);
        const unsigned k = I.size();
        check_k(p, k);
        if (k == 0)
            bad("SUBLATTICE_SUM needs |I| >= 1");
        enumerable(k);
        for_each_subset(I, [&](IndexSet J) { lhs += d(J); });
        const BigInt scale = detail::pow2(k - 1);
        rhs = scale * (1 + d(I));
        const BigInt gI = g_of(m, I);
        const BigInt l = reduce(lhs, gI);
        const BigInt rr = reduce(scale, gI);
        corollaries.push_back({"sum mod g_I = 2^(k-1)", gI, l, rr, l == rr});
        break;
    }
    case IdentityId::AllIdempotentSum: {
        enumerable(r);
        for_each_subset(R, [&](IndexSet I) { lhs += d(I); });
        rhs = detail::pow2(r - 1);
        break;
    }
    case IdentityId::OddSumIdempotentCriterion: {
        if (mpz_even_p(mod.get_mpz_t()))
            bad("ODD_SUM_IDEMPOTENT_CRITERION needs odd m");
        const auto I = required(p.I, "I", R);
        const auto J = required(p.J, "J", R);
        const BigInt s = reduce(d(I) + d(J), mod);
        const bool idempotent = reduce(s * s - s, mod) == 0;
        const bool matches_meet = reduce(s - d(I & J), mod) == 0;
        lhs = idempotent ? 1 : 0;
        rhs = matches_meet ? 1 : 0;
        const BigInt covers = ((I | J) == R) ? 1 : 0;
        corollaries.push_back({"idempotent iff I u J = R", mod, lhs, covers, lhs == covers});
        break;
    }
    default:
        bad("unsupported identity");
    }

    IdentityReport report{id, m, p, mod, reduce(lhs, mod), reduce(rhs, mod), false, std::move(corollaries)};
    report.holds = report.lhs == report.rhs;
    return report;
}

std::vector<IdentityParams> enumerate_params(const FactoredModulus& m, IdentityId id,
                                             const Limits& limits)
{
    if (is_general(id))
        bad(std::string(to_string(id)) + " is a sublattice identity");
    require_enumerable(m, limits);

    const auto r = static_cast<unsigned>(m.rank());
    const IndexSet R = IndexSet::full(r);
    std::vector<IdentityParams> out;

    switch (id) {
    case IdentityId::ComplementSum:
    case IdentityId::SublatticeSum:
        for_each_subset(R, [&](IndexSet I) {
            if (id == IdentityId::SublatticeSum && I.empty())
                return;
            out.push_back({.I = I});
        });
        break;
    case IdentityId::PrimitiveSum:
        for_each_subset(R, [&](IndexSet J) { out.push_back({.J = J}); });
        break;
    case IdentityId::TopLevelSum:
    case IdentityId::AllIdempotentSum:
        out.push_back({});
        break;
    case IdentityId::DisjointUnionSum:
        // Partitions of each J into nonempty blocks; J = {} contributes the
        // single instance [{}]. Empty parts beyond that add 1 to both sides
        // and are left to the random sweeps.
        for_each_subset(R, [&](IndexSet J) {
            if (J.empty()) {
                out.push_back({.J = J, .sets = {J}});
                return;
            }
            for (auto& parts : set_partitions(J))
                out.push_back({.J = J, .sets = std::move(parts)});
        });
        break;
    case IdentityId::LevelSum:
        for (unsigned k = 0; k < r; ++k)
            out.push_back({.k = k});
        break;
    case IdentityId::BelowNLevels:
        for_each_subset(R, [&](IndexSet I) {
            for (unsigned n = 1; n < I.size(); ++n)
                out.push_back({.I = I, .n = n});
        });
        break;
    case IdentityId::OddSumIdempotentCriterion:
        if (mpz_odd_p(m.value().get_mpz_t()))
            for_each_subset(R, [&](IndexSet I) {
                for_each_subset(R, [&](IndexSet J) { out.push_back({.I = I, .J = J}); });
            });
        break;
    default:
        break;
    }
    return out;
}

} // namespace idem
