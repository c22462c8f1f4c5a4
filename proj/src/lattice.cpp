#include "idem/lattice.hpp"

#include <sstream>

#include "idem/error.hpp"
#include "idempotent_table.hpp"

namespace idem {

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw Error(Errc::BadParams, what);
}

} // namespace

Idempotent meet(const Idempotent& a, const Idempotent& b)
{
    require_same_modulus(a, b);
    return idempotent_from_set(a.modulus(), a.set() & b.set());
}

Idempotent join(const Idempotent& a, const Idempotent& b)
{
    require_same_modulus(a, b);
    return idempotent_from_set(a.modulus(), a.set() | b.set());
}

bool leq(const Idempotent& a, const Idempotent& b)
{
    require_same_modulus(a, b);
    return a.set().subset_of(b.set());
}

bool leq_by_divisibility(const Idempotent& a, const Idempotent& b)
{
    require_same_modulus(a, b);
    return mpz_divisible_p(b.g().get_mpz_t(), a.g().get_mpz_t()) != 0;
}

std::vector<Idempotent> level(const FactoredModulus& m, unsigned k, const Limits& limits)
{
    if (k > m.rank())
        throw Error(Errc::LevelOutOfRange,
                    "level " + std::to_string(k) + " but r = " + std::to_string(m.rank()));
    require_enumerable(m, limits);
    std::vector<Idempotent> out;
    for_each_subset(IndexSet::full(m.rank()), [&](IndexSet s) {
        if (s.size() == k)
            out.push_back(idempotent_from_set(m, s));
    });
    return out;
}

ConsistentLattice consistent_lattice(const FactoredModulus& m, IndexSet S, IndexSet T)
{
    const IndexSet R = IndexSet::full(m.rank());
    if (!S.subset_of(R) || !T.subset_of(R))
        throw Error(Errc::IndexOutOfRange, "S = " + to_string(S) + ", T = " + to_string(T) +
                                               " must lie within " + to_string(R));
    if (!T.subset_of(S))
        throw Error(Errc::NotNested, "T = " + to_string(T) + " is not a subset of S = " + to_string(S));
    return ConsistentLattice(m, S, T, g_of(m, S), g_of(m, T));
}

std::vector<LatticeElement> lattice_elements(const ConsistentLattice& lattice, const Limits& limits)
{
    if (lattice.free_rank() > limits.max_enumeration_rank)
        throw Error(Errc::CapExceeded, "|S\\T| = " + std::to_string(lattice.free_rank()) +
                                           " exceeds the enumeration cap");
    std::vector<LatticeElement> out;
    out.reserve(std::size_t{1} << lattice.free_rank());
    for_each_between(lattice.T(), lattice.S(), [&](IndexSet k) {
        out.push_back({k, g_of(lattice.modulus(), k)});
    });
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const ConsistentLattice& lattice,
                                                             const Limits& limits)
{
    const auto elements = lattice_elements(lattice, limits);
    std::unordered_map<std::uint64_t, std::size_t> position;
    for (std::size_t i = 0; i < elements.size(); ++i)
        position.emplace(elements[i].set.bits(), i);

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    const auto free = lattice.S() - lattice.T();
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (unsigned j : (free - elements[i].set).members())
            edges.emplace_back(i, position.at(elements[i].set.with(j).bits()));
    return edges;
}

IdentityReport verify_general_identity(const ConsistentLattice& L, IdentityId id,
                                       const IdentityParams& p, const Limits& limits)
{
    if (!is_general(id))
        bad(std::string(to_string(id)) + " is a mod-m identity; use verify_identity");
    if ((p.S && *p.S != L.S()) || (p.T && *p.T != L.T()))
        bad("params name a different sublattice than the one supplied");

    const FactoredModulus& m = L.modulus();
    const IndexSet S = L.S();
    const IndexSet T = L.T();
    const unsigned s = S.size();
    const unsigned t = T.size();
    detail::IdempotentTable d(m);

    auto between = [&](const std::optional<IndexSet>& x, const char* name) {
        if (!x)
            bad(std::string("parameter ") + name + " is required");
        if (!L.contains(*x))
            bad(std::string("parameter ") + name + " = " + to_string(*x) + " is not between T = " +
                to_string(T) + " and S = " + to_string(S));
        return *x;
    };
    auto enumerable = [&](unsigned width) {
        if (width > limits.max_enumeration_rank)
            throw Error(Errc::CapExceeded, "sum over 2^" + std::to_string(width) + " subsets");
    };
    auto check_sets = [&] {
        if (p.sets.empty())
            bad(std::string(to_string(id)) + " needs at least one set");
        for (auto x : p.sets)
            if (!L.contains(x))
                bad(to_string(x) + " is not between T and S");
    };

    BigInt lhs = 0;
    BigInt rhs = 0;
    std::vector<CongruenceCheck> corollaries;

    switch (id) {
    case IdentityId::GenProduct: {
        check_sets();
        lhs = 1;
        IndexSet u;
        for (auto x : p.sets) {
            lhs = lhs * d(x) % m.value();
            u = u | x;
        }
        rhs = d(u);
        break;
    }
    case IdentityId::GenUnionSum: {
        const auto I = between(p.I, "I");
        const auto J = between(p.J, "J");
        lhs = d(I) + d(J);
        rhs = d(I | J) + d(I & J);
        break;
    }
    case IdentityId::GenDisjointSum: {
        check_sets();
        IndexSet J;
        for (std::size_t a = 0; a < p.sets.size(); ++a) {
            for (std::size_t b = a + 1; b < p.sets.size(); ++b)
                if ((p.sets[a] & p.sets[b]) != T)
                    bad("GEN_DISJOINT_SUM needs pairwise intersections equal to T");
            J = J | p.sets[a];
        }
        if (p.J && *p.J != J)
            bad("J = " + to_string(*p.J) + " is not the union of the sets");
        for (auto x : p.sets)
            lhs += d(x);
        rhs = BigInt(static_cast<unsigned long>(p.sets.size() - 1)) * d(T) + d(J);
        break;
    }
    case IdentityId::GenDualSum: {
        const auto I = between(p.I, "I");
        lhs = d(I) + d(S - (I - T));
        rhs = d(T);
        break;
    }
    case IdentityId::GenSubsetSum: {
        const auto I = between(p.I, "I");
        if (I == T)
            bad("GEN_SUBSET_SUM needs T strictly inside I");
        for (unsigned i : (I - T).members())
            lhs += d(S.without(i));
        rhs = d(S - (I - T));
        break;
    }
    case IdentityId::GenPrimitiveSum: {
        const auto J = between(p.J, "J");
        if (J == S)
            bad("GEN_PRIMITIVE_SUM needs J strictly inside S");
        for (unsigned i : (S - J).members())
            lhs += d(S.without(i));
        rhs = d(J);
        break;
    }
    case IdentityId::GenLevelSum: {
        if (!p.k)
            bad("GEN_LEVEL_SUM needs k");
        const unsigned k = *p.k;
        if (s == 0 || k < t || k >= s)
            bad("GEN_LEVEL_SUM needs |T| <= k < |S|");
        enumerable(s - t);
        for_each_between(T, S, [&](IndexSet J) {
            if (J.size() == k)
                lhs += d(J);
        });
        rhs = binomial(s - t - 1, k - t) * d(T);
        break;
    }
    case IdentityId::GenBelowNLevels: {
        const auto I = between(p.I, "I");
        const unsigned k = I.size();
        if (p.k && *p.k != k)
            bad("k does not match |I|");
        if (!p.n)
            bad("GEN_BELOW_N_LEVELS needs n");
        const unsigned n = *p.n;
        if (n == 0 || n + t >= k)
            bad("GEN_BELOW_N_LEVELS needs 0 < n < |I| - |T|");
        enumerable(k - t);
        for_each_between(T, I, [&](IndexSet J) {
            if (J.size() == k - n)
                lhs += d(J);
        });
        rhs = binomial(k - t - 1, n - 1) * d(T) + binomial(k - t - 1, n) * d(I);
        break;
    }
    case IdentityId::GenSublatticeSum: {
        const auto I = between(p.I, "I");
        const unsigned k = I.size();
        if (p.k && *p.k != k)
            bad("k does not match |I|");
        if (k == t)
            bad("GEN_SUBLATTICE_SUM needs |I| > |T|");
        enumerable(k - t);
        for_each_between(T, I, [&](IndexSet J) { lhs += d(J); });
        const BigInt scale = detail::pow2(k - t - 1);
        rhs = scale * (d(T) + d(I));
        const BigInt gI = g_of(m, I);
        const BigInt l = reduce(lhs, gI);
        const BigInt rr = reduce(scale * d(T), gI);
        corollaries.push_back({"sum mod g_I = 2^(k-t-1) d_T", gI, l, rr, l == rr});
        break;
    }
    default:
        bad("unsupported identity");
    }

    IdentityParams recorded = p;
    recorded.S = S;
    recorded.T = T;
    const BigInt& gS = L.supremum();
    IdentityReport report{id, m, std::move(recorded), gS, reduce(lhs, gS), reduce(rhs, gS), false,
                          std::move(corollaries)};
    report.holds = report.lhs == report.rhs;
    return report;
}

std::vector<IdentityParams> enumerate_general_params(const ConsistentLattice& L, IdentityId id,
                                                     const Limits& limits)
{
    if (!is_general(id))
        bad(std::string(to_string(id)) + " is a mod-m identity");
    const auto elements = lattice_elements(L, limits);
    const IndexSet S = L.S();
    const IndexSet T = L.T();
    std::vector<IdentityParams> out;

    switch (id) {
    case IdentityId::GenProduct:
        for (const auto& a : elements) {
            out.push_back({.sets = {a.set}});
            for (const auto& b : elements) {
                out.push_back({.sets = {a.set, b.set}});
                if (elements.size() <= 8)
                    for (const auto& c : elements)
                        out.push_back({.sets = {a.set, b.set, c.set}});
            }
        }
        break;
    case IdentityId::GenUnionSum:
        for (const auto& a : elements)
            for (const auto& b : elements)
                out.push_back({.I = a.set, .J = b.set});
        break;
    case IdentityId::GenDisjointSum:
        for (const auto& e : elements) {
            const IndexSet free = e.set - T;
            if (free.empty()) {
                out.push_back({.J = e.set, .sets = {e.set}});
                continue;
            }
            for (auto& blocks : set_partitions(free)) {
                std::vector<IndexSet> parts;
                for (auto b : blocks)
                    parts.push_back(b | T);
                out.push_back({.J = e.set, .sets = std::move(parts)});
            }
        }
        break;
    case IdentityId::GenDualSum:
        for (const auto& e : elements)
            out.push_back({.I = e.set});
        break;
    case IdentityId::GenSubsetSum:
    case IdentityId::GenSublatticeSum:
        for (const auto& e : elements)
            if (e.set != T)
                out.push_back({.I = e.set});
        break;
    case IdentityId::GenPrimitiveSum:
        for (const auto& e : elements)
            if (e.set != S)
                out.push_back({.J = e.set});
        break;
    case IdentityId::GenLevelSum:
        for (unsigned k = T.size(); k < S.size(); ++k)
            out.push_back({.k = k});
        break;
    case IdentityId::GenBelowNLevels:
        for (const auto& e : elements)
            for (unsigned n = 1; n + T.size() < e.set.size(); ++n)
                out.push_back({.I = e.set, .n = n});
        break;
    default:
        break;
    }
    for (auto& p : out) {
        p.S = S;
        p.T = T;
    }
    return out;
}

std::optional<std::pair<IdentityId, IdentityParams>> specialize(IdentityId general,
                                                                const IdentityParams& p, IndexSet R)
{
    IdentityParams base = p;
    base.S.reset();
    base.T.reset();
    switch (general) {
    case IdentityId::GenDisjointSum:
        return std::pair{IdentityId::DisjointUnionSum, base};
    case IdentityId::GenDualSum:
        return std::pair{IdentityId::ComplementSum, base};
    case IdentityId::GenSubsetSum:
        // sum over i in I of d_{R\{i}} = d_{R\I} is PRIMITIVE_SUM at J = R\I.
        base.J = R - p.I.value_or(IndexSet{});
        base.I.reset();
        return std::pair{IdentityId::PrimitiveSum, base};
    case IdentityId::GenPrimitiveSum:
        return std::pair{IdentityId::PrimitiveSum, base};
    case IdentityId::GenLevelSum:
        return std::pair{IdentityId::LevelSum, base};
    case IdentityId::GenBelowNLevels:
        return std::pair{IdentityId::BelowNLevels, base};
    case IdentityId::GenSublatticeSum:
        return std::pair{IdentityId::SublatticeSum, base};
    default:
        return std::nullopt;
    }
}

std::string to_dot(const ConsistentLattice& lattice, LatticeLabel label, const Limits& limits)
{
    const auto elements = lattice_elements(lattice, limits);
    const auto edges = hasse_edges(lattice, limits);
    std::ostringstream out;
    out << "digraph lattice {\n";
    out << "  rankdir=BT;\n";
    out << "  label=\"L(" << lattice.modulus().value().get_str() << ", S=" << to_string(lattice.S())
        << ", T=" << to_string(lattice.T()) << ")\";\n";
    out << "  node [shape=box];\n";
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const auto& e = elements[i];
        const BigInt shown = label == LatticeLabel::G
                                 ? e.g
                                 : idempotent_from_set(lattice.modulus(), e.set).value();
        out << "  n" << e.set.bits() << " [label=\"" << shown.get_str() << "\", tooltip=\"K="
            << to_string(e.set) << "\"];\n";
    }
    for (const auto& [lo, hi] : edges)
        out << "  n" << elements[lo].set.bits() << " -> n" << elements[hi].set.bits() << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace idem
