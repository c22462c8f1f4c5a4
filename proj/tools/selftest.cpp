#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "cli.hpp"
#include "idem/error.hpp"
#include "idem/serialize.hpp"

namespace idemtool {

using namespace idem;

namespace {

using u64 = std::uint64_t;

struct Failure {
    u64 m;
    std::string check;
    std::string detail;
};

class Suite {
public:
    explicit Suite(const SelftestOptions& o) : options_(o) {}

    void run(u64 n)
    {
        const auto m = factorize(BigInt(n), options_.limits);
        guarded(n, "idempotents", [&] { return idempotents(n, m); });
        guarded(n, "algebra", [&] { return algebra(m); });
        guarded(n, "identities", [&] { return identities(m); });
        guarded(n, "generalized", [&] { return generalized(m); });
        guarded(n, "lattice_order", [&] { return lattice_order(m); });
        guarded(n, "components", [&] { return components(n, m); });
        if (n <= options_.limits.max_graph_modulus)
            guarded(n, "power_graph", [&] { return power_graph(m); });
        guarded(n, "modexp", [&] { return modexp(n, m); });
    }

    const std::vector<Failure>& failures() const { return failures_; }
    const std::map<std::string, std::pair<u64, u64>>& tally() const { return tally_; }

private:
    template <class F>
    void guarded(u64 n, const std::string& name, F&& check)
    {
        auto& [count, failed] = tally_[name];
        ++count;
        std::string detail;
        try {
            detail = check();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!detail.empty()) {
            ++failed;
            failures_.push_back({n, name, detail});
        }
    }

    static std::string idempotents(u64 n, const FactoredModulus& m)
    {
        std::vector<u64> brute;
        for (u64 x = 0; x < n; ++x)
            if (x * x % n == x)
                brute.push_back(x);
        const auto ds = enumerate_idempotents(m);
        if (ds.size() != (std::size_t{1} << m.rank()))
            return "expected 2^r idempotents";
        std::vector<u64> got;
        for (const auto& d : ds) {
            got.push_back(d.value().get_ui());
            for (unsigned i = 1; i <= m.rank(); ++i) {
                const u64 q = m.prime_power(i).get_ui();
                const u64 want = d.set().contains(i) ? 0 : 1 % q;
                if (d.value().get_ui() % q != want)
                    return "d" + to_string(d.set()) + " has the wrong residue mod " + std::to_string(q);
            }
        }
        std::sort(got.begin(), got.end());
        return got == brute ? "" : "idempotent set differs from {x : x^2 = x}";
    }

    static std::string algebra(const FactoredModulus& m)
    {
        const auto ds = enumerate_idempotents(m);
        const BigInt& n = m.value();
        for (const auto& a : ds) {
            if (complement(complement(a)) != a)
                return "complement is not an involution at " + to_string(a.set());
            for (const auto& b : ds) {
                std::vector<Idempotent> pair{a, b};
                if (multiply(pair).value() != a.value() * b.value() % n)
                    return "product mismatch";
                const auto [u, v] = add_decompose(a, b);
                if (reduce(a.value() + b.value() - u.value() - v.value(), n) != 0)
                    return "add_decompose mismatch";
                if (subtract(a, b) != reduce(a.value() - b.value(), n))
                    return "subtract mismatch";
            }
        }
        return "";
    }

    std::string identities(const FactoredModulus& m) const
    {
        for (auto id : base_identities())
            for (const auto& p : enumerate_params(m, id, options_.limits))
                if (!verify_identity(m, id, p, options_.limits).all_hold())
                    return std::string(to_string(id)) + " fails at " + to_json(p).dump();
        return "";
    }

    std::string generalized(const FactoredModulus& m) const
    {
        const IndexSet R = IndexSet::full(m.rank());
        std::string failure;
        for_each_subset(R, [&](IndexSet S) {
            for_each_subset(S, [&](IndexSet T) {
                if (!failure.empty())
                    return;
                const auto L = consistent_lattice(m, S, T);
                for (auto id : general_identities())
                    for (const auto& p : enumerate_general_params(L, id, options_.limits)) {
                        const auto rep = verify_general_identity(L, id, p, options_.limits);
                        if (!rep.all_hold()) {
                            failure = std::string(to_string(id)) + " fails at " + to_json(p).dump();
                            return;
                        }
                        if (S != R || !T.empty())
                            continue;
                        if (auto base = specialize(id, p, R)) {
                            const auto b = verify_identity(m, base->first, base->second, options_.limits);
                            if (!b.all_hold() || b.lhs != rep.lhs || b.rhs != rep.rhs) {
                                failure = std::string(to_string(id)) + " does not specialize at " +
                                          to_json(p).dump();
                                return;
                            }
                        }
                    }
            });
        });
        return failure;
    }

    static std::string lattice_order(const FactoredModulus& m)
    {
        const auto ds = enumerate_idempotents(m);
        for (const auto& a : ds)
            for (const auto& b : ds) {
                const bool sub = a.set().subset_of(b.set());
                const bool div = mpz_divisible_p(b.g().get_mpz_t(), a.g().get_mpz_t()) != 0;
                if (sub != div || leq(a, b) != sub)
                    return "order characterizations disagree at " + to_string(a.set()) + ", " +
                           to_string(b.set());
                BigInt l, g;
                mpz_lcm(l.get_mpz_t(), a.g().get_mpz_t(), b.g().get_mpz_t());
                mpz_gcd(g.get_mpz_t(), a.g().get_mpz_t(), b.g().get_mpz_t());
                if (join(a, b).g() != l || meet(a, b).g() != g)
                    return "join/meet do not match lcm/gcd";
            }
        return "";
    }

    static std::string components(u64 n, const FactoredModulus& m)
    {
        std::vector<int> owner(n, -1);
        std::string failure;
        for_each_subset(IndexSet::full(m.rank()), [&](IndexSet I) {
            if (!failure.empty())
                return;
            for (u64 x : component_elements(m, I)) {
                if (owner[x] != -1) {
                    failure = std::to_string(x) + " lies in two components";
                    return;
                }
                owner[x] = static_cast<int>(I.bits());
            }
            const u64 d = idempotent_from_set(m, I).value().get_ui();
            const auto cyc = cycle_elements(m, I);
            const std::set<u64> group(cyc.begin(), cyc.end());
            if (!group.count(d)) {
                failure = "d_I missing from its cycle";
                return;
            }
            for (u64 a : cyc) {
                if (a * d % n != a) {
                    failure = "d_I is not the identity of its cycle";
                    return;
                }
                bool inverse = false;
                for (u64 b : cyc) {
                    if (!group.count(a * b % n)) {
                        failure = "cycle not closed under multiplication";
                        return;
                    }
                    inverse = inverse || a * b % n == d;
                }
                if (!inverse) {
                    failure = std::to_string(a) + " has no inverse in its cycle";
                    return;
                }
            }
        });
        if (!failure.empty())
            return failure;
        if (std::count(owner.begin(), owner.end(), -1))
            return "components do not cover Z/mZ";

        for (u64 a = 0; a < n; ++a) {
            const auto o = orbit(m, BigInt(a));
            const auto ids = idempotents_in(o, m);
            const auto c = component_of(m, BigInt(a));
            if (ids.size() != 1 || ids[0] != c.idempotent.value())
                return "orbit of " + std::to_string(a) + " does not reach its component idempotent";
            if (c.set.bits() != static_cast<u64>(owner[a]))
                return "component_of disagrees with component_elements at " + std::to_string(a);
            if (o.tail.empty() != is_cycle_element(m, BigInt(a)))
                return "cycle membership disagrees with the orbit at " + std::to_string(a);
        }
        return "";
    }

    static std::string power_graph(const FactoredModulus& m)
    {
        const auto g = build_power_graph(m);
        if (g.component_count != (std::size_t{1} << m.rank()))
            return std::to_string(g.component_count) + " components, expected 2^r";
        return "";
    }

    std::string modexp(u64 n, const FactoredModulus& m) const
    {
        for (auto kind : {TotientKind::Euler, TotientKind::Carmichael}) {
            const ExpEngine engine(m, {.totient = kind});
            for (u64 b = 0; b < n; ++b) {
                u64 power = 1 % n;
                for (u64 e = 0; e <= options_.max_exponent; ++e) {
                    const auto got = engine.evaluate(b, e).value;
                    if (got != power)
                        return std::to_string(b) + "^" + std::to_string(e) + " gave " + std::to_string(got) +
                               " under " + std::string(to_string(kind));
                    power = power * b % n;
                }
            }
        }
        return "";
    }

    SelftestOptions options_;
    std::vector<Failure> failures_;
    std::map<std::string, std::pair<u64, u64>> tally_;
};

} // namespace

std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_range(std::string_view text)
{
    auto number = [](std::string_view s) -> std::optional<std::uint64_t> {
        std::uint64_t v = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
            return std::nullopt;
        return v;
    };
    for (std::string_view sep : {"..", "-", ":"}) {
        const auto pos = text.find(sep);
        if (pos == std::string_view::npos)
            continue;
        auto lo = number(text.substr(0, pos));
        auto hi = number(text.substr(pos + sep.size()));
        if (!lo || !hi || *lo < 2 || *hi < *lo)
            return std::nullopt;
        return std::pair{*lo, *hi};
    }
    auto single = number(text);
    if (!single || *single < 2)
        return std::nullopt;
    return std::pair{*single, *single};
}

int selftest(const SelftestOptions& options, bool json, std::ostream& out)
{
    if (options.hi > options.limits.max_residue_enumeration || options.hi >= (std::uint64_t{1} << 32))
        throw Error(Errc::CapExceeded, "selftest walks all of Z/mZ; m must stay below " +
                                           std::to_string(options.limits.max_residue_enumeration));
    Suite suite(options);
    for (std::uint64_t n = options.lo; n <= options.hi; ++n)
        suite.run(n);

    const bool passed = suite.failures().empty();
    if (json) {
        Json checks = Json::object();
        for (const auto& [name, t] : suite.tally())
            checks[name] = {{"moduli", t.first}, {"failures", t.second}};
        Json failures = Json::array();
        for (const auto& f : suite.failures())
            failures.push_back({{"m", f.m}, {"check", f.check}, {"detail", f.detail}});
        out << Json{{"range", {options.lo, options.hi}},
                    {"max_exponent", options.max_exponent},
                    {"checks", checks},
                    {"failures", failures},
                    {"passed", passed}}
                   .dump(2)
            << '\n';
    } else {
        for (const auto& f : suite.failures())
            out << "FAIL m=" << f.m << " " << f.check << ": " << f.detail << '\n';
        for (const auto& [name, t] : suite.tally())
            out << (t.second ? "FAIL " : "PASS ") << name << " (" << t.first << " moduli, " << t.second
                << " failing)\n";
        out << "selftest " << options.lo << ".." << options.hi << ": " << (passed ? "passed" : "FAILED")
            << '\n';
    }
    return passed ? Ok : VerificationFailed;
}

} // namespace idemtool
