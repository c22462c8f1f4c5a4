#pragma once

#include <cstdint>

namespace idem {

// Enumeration and search caps shared by every module. All operations that walk
// 2^r subsets or all of [0, m) check the relevant cap before starting.
struct Limits {
    std::uint64_t trial_division_bound = 1'000'000;
    unsigned max_enumeration_rank = 24;          // r for full 2^r lattice walks
    std::uint64_t max_residue_enumeration = 1'000'000;  // m for walks over Z/mZ
    std::uint64_t max_graph_modulus = 5000;       // m for power-graph export
    std::uint64_t max_orbit_length = 1'000'000;
};

inline constexpr Limits default_limits{};

} // namespace idem
