#pragma once

#include <string>
#include <vector>

#include "idem/identities.hpp"
#include "idem/idempotent.hpp"

namespace idem {

// Idempotent lattice of Z/mZ: d_I <= d_J iff I is a subset of J iff g_I | g_J.

Idempotent meet(const Idempotent& a, const Idempotent& b);
Idempotent join(const Idempotent& a, const Idempotent& b);
bool leq(const Idempotent& a, const Idempotent& b);
/// Order test through the divisibility of g values instead of the index sets.
bool leq_by_divisibility(const Idempotent& a, const Idempotent& b);

/// The C(r, k) idempotents with |I| = k, ascending bitmask order.
std::vector<Idempotent> level(const FactoredModulus& m, unsigned k,
                              const Limits& limits = default_limits);

inline bool is_top_level(const Idempotent& d)
{
    return d.modulus().rank() >= 1 && d.set().size() + 1 == d.modulus().rank();
}

/// The finite consistent sublattice L_{m,S,T}: the divisors g_K of m with
/// T <= K <= S, ordered by divisibility.
class ConsistentLattice {
public:
    const FactoredModulus& modulus() const noexcept { return modulus_; }
    IndexSet S() const noexcept { return s_; }
    IndexSet T() const noexcept { return t_; }
    const BigInt& supremum() const noexcept { return g_s_; }
    const BigInt& infimum() const noexcept { return g_t_; }
    /// Number of elements, 2^{|S\T|}.
    unsigned free_rank() const noexcept { return (s_ - t_).size(); }
    bool contains(IndexSet k) const noexcept { return t_.subset_of(k) && k.subset_of(s_); }

private:
    friend ConsistentLattice consistent_lattice(const FactoredModulus&, IndexSet, IndexSet);

    ConsistentLattice(FactoredModulus m, IndexSet s, IndexSet t, BigInt gs, BigInt gt)
        : modulus_(std::move(m)), s_(s), t_(t), g_s_(std::move(gs)), g_t_(std::move(gt)) {}

    FactoredModulus modulus_;
    IndexSet s_;
    IndexSet t_;
    BigInt g_s_;
    BigInt g_t_;
};

ConsistentLattice consistent_lattice(const FactoredModulus& m, IndexSet S, IndexSet T);

/// The whole idempotent lattice viewed as L_{m,R,{}}.
inline ConsistentLattice full_lattice(const FactoredModulus& m)
{
    return consistent_lattice(m, IndexSet::full(m.rank()), IndexSet{});
}

struct LatticeElement {
    IndexSet set;
    BigInt g;
};

/// All g_K with T <= K <= S, ascending bitmask order of K.
std::vector<LatticeElement> lattice_elements(const ConsistentLattice& lattice,
                                             const Limits& limits = default_limits);

/// Cover relations K -> K u {i} of the Hasse diagram, as index pairs into
/// lattice_elements().
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const ConsistentLattice& lattice,
                                                             const Limits& limits = default_limits);

/// Evaluates a GEN_* identity on L_{m,S,T}: idempotents are taken mod m and
/// both sides reduced mod g_S. Parameter sets must lie between T and S.
IdentityReport verify_general_identity(const ConsistentLattice& lattice, IdentityId id,
                                       const IdentityParams& params,
                                       const Limits& limits = default_limits);

/// Every valid parameter instance of a GEN_* identity on the lattice. For
/// GEN_PRODUCT this is all single operands and ordered pairs, plus ordered
/// triples when the lattice has at most 8 elements.
std::vector<IdentityParams> enumerate_general_params(const ConsistentLattice& lattice, IdentityId id,
                                                     const Limits& limits = default_limits);

/// The base identity instance a GEN_* instance reduces to when T = {} and
/// S = R. GEN_PRODUCT and GEN_UNION_SUM specialize to multiply() and
/// add_decompose() rather than catalog entries, so they map to nullopt.
std::optional<std::pair<IdentityId, IdentityParams>> specialize(IdentityId general,
                                                                const IdentityParams& params,
                                                                IndexSet R);

enum class LatticeLabel { G, D };

/// Graphviz rendering of the Hasse diagram, bottom (g_T) to top (g_S).
std::string to_dot(const ConsistentLattice& lattice, LatticeLabel label,
                   const Limits& limits = default_limits);

} // namespace idem
