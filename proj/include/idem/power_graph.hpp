#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "idem/idempotent.hpp"

namespace idem {

/// The sequence a, a^2, a^3, ... mod m split at its first repetition.
/// tail holds the powers that never recur (empty iff a lies on its own cycle);
/// cycle starts at a^{tail_length + 1}.
struct OrbitDecomposition {
    BigInt base;
    std::vector<BigInt> tail;
    std::vector<BigInt> cycle;

    std::size_t tail_length() const noexcept { return tail.size(); }
    std::size_t cycle_length() const noexcept { return cycle.size(); }
};

OrbitDecomposition orbit(const FactoredModulus& m, const BigInt& a,
                         const Limits& limits = default_limits);

/// The idempotent elements among tail and cycle, in order of appearance.
std::vector<BigInt> idempotents_in(const OrbitDecomposition& orbit, const FactoredModulus& m);

/// The component C_I of the sequential power graph, named by its idempotent.
struct ComponentDescriptor {
    IndexSet set;
    BigInt multiplier;  // pi_I, the product of the primes indexed by I
    BigInt g;
    Idempotent idempotent;
    BigInt size;        // |C_I| = prod_{i in I} p_i^{e_i-1} * prod_{j not in I} phi(p_j^{e_j})
};

ComponentDescriptor component_descriptor(const FactoredModulus& m, IndexSet set);

/// I = {i : p_i | b}; b = 0 lands in C_R.
ComponentDescriptor component_of(const FactoredModulus& m, const BigInt& b);

/// d_I * b = b (mod m) for b's component idempotent d_I.
bool is_cycle_element(const FactoredModulus& m, const BigInt& b);

// Enumerations over Z/mZ; m is bounded by limits.max_residue_enumeration so
// residues are returned as machine words, ascending.
using Residues = std::vector<std::uint64_t>;

/// d_I * U, the cycle part of C_I.
Residues cycle_elements(const FactoredModulus& m, IndexSet set, const Limits& limits = default_limits);

/// {pi_I * x mod m : gcd(x, m / g_I) = 1}.
Residues component_elements(const FactoredModulus& m, IndexSet set,
                            const Limits& limits = default_limits);

/// Directed graph on Z/mZ with an edge c^i -> c^{i+1} for every c and i >= 1.
struct PowerGraph {
    FactoredModulus modulus;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;  // sorted, deduplicated
    std::vector<std::uint32_t> component;                        // weak component per vertex
    std::size_t component_count = 0;

    std::uint64_t vertex_count() const noexcept { return modulus.word(); }
};

PowerGraph build_power_graph(const FactoredModulus& m, const Limits& limits = default_limits);

/// One cluster per component (labelled by its index set), idempotents drawn
/// as double circles.
std::string to_dot(const PowerGraph& graph);

inline std::string export_power_graph(const FactoredModulus& m, const Limits& limits = default_limits)
{
    return to_dot(build_power_graph(m, limits));
}

} // namespace idem
