#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idem/limits.hpp"

namespace idemtool {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, UsageError = 2 };

/// Caps from IDEM_TRIAL_BOUND, IDEM_MAX_RANK, IDEM_MAX_RESIDUES,
/// IDEM_MAX_GRAPH and IDEM_MAX_ORBIT. `getenv` is injectable for tests.
/// Throws idem::Error(BadParams) on a non-positive or malformed value.
idem::Limits limits_from_env(const char* (*getenv)(const char*) = nullptr);

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestOptions {
    std::uint64_t lo = 2;
    std::uint64_t hi = 2;
    unsigned max_exponent = 40;
    idem::Limits limits;
};

/// "a..b", "a-b", "a:b" or a single modulus.
std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_range(std::string_view text);

/// The invariant suite over every modulus in [lo, hi]; returns the exit code.
int selftest(const SelftestOptions& options, bool json, std::ostream& out);

} // namespace idemtool
