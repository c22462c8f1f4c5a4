#pragma once

#include <cstdint>
#include <map>

#include "idem/modexp.hpp"

namespace idem {

struct BenchConfig {
    std::size_t samples = 10'000;
    unsigned exponent_bits = 64;
    std::uint64_t seed = 1;
    ExpOptions options;
};

struct TimingStats {
    std::size_t count = 0;
    double median_ns = 0;
    double p95_ns = 0;
};

/// Per-sample wall times of the dispatcher and of plain square-and-multiply on
/// identical inputs. Only relative numbers are meaningful.
struct BenchReport {
    FactoredModulus modulus;
    BenchConfig config;
    std::map<Strategy, std::size_t> histogram;
    std::map<Strategy, TimingStats> dispatcher;  // keyed by the strategy chosen
    std::map<Strategy, TimingStats> baseline;    // same keys, baseline timings
    TimingStats dispatcher_overall;
    TimingStats baseline_overall;
    std::size_t mismatches = 0;
};

/// Draws `samples` (b, e) pairs from `seed`: a third uniform in [0, m), a third
/// from random power-graph components and a third from their cycles; one
/// exponent in eight is below max(e_i) so the fallback path is exercised.
BenchReport bench_compare(const FactoredModulus& m, const BenchConfig& config);

} // namespace idem
