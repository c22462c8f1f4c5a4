// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Reference values come from the brute-force helpers in
// oracles.hpp or from explicit CRT sums computed here with raw GMP calls.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "idem/bench.hpp"
#include "idem/error.hpp"
#include "idem/identities.hpp"
#include "idem/idempotent.hpp"
#include "idem/lattice.hpp"
#include "idem/modexp.hpp"
#include "idem/power_graph.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace idem;
using oracle::u64;

namespace {

// Collects failures for one criterion; keeps the first few messages.
class Tally {
public:
    void check(bool ok, const std::function<std::string()>& what)
    {
        ++checks_;
        if (ok)
            return;
        if (failures_++ < 5)
            messages_.push_back(what());
    }
    void note(std::string text) { notes_.push_back(std::move(text)); }

    std::size_t checks() const { return checks_; }
    std::size_t failures() const { return failures_; }
    const std::vector<std::string>& messages() const { return messages_; }
    const std::vector<std::string>& notes() const { return notes_; }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::vector<std::string> messages_;
    std::vector<std::string> notes_;
};

std::string str(const BigInt& x) { return x.get_str(); }

BigInt product(const std::vector<BigInt>& q)
{
    BigInt m = 1;
    for (const auto& x : q)
        m *= x;
    return m;
}

std::vector<BigInt> prime_powers(const FactoredModulus& m)
{
    std::vector<BigInt> q;
    for (unsigned i = 1; i <= m.rank(); ++i) {
        BigInt x;
        mpz_pow_ui(x.get_mpz_t(), m.prime(i).get_mpz_t(), m.exponent(i));
        q.push_back(x);
    }
    return q;
}

// d_I for every mask I as the explicit CRT sum of the basis vectors
// e_j (= 1 mod q_j, 0 mod the others) over j outside I.
std::vector<BigInt> crt_table(const std::vector<BigInt>& q)
{
    const BigInt m = product(q);
    const std::size_t r = q.size();
    std::vector<BigInt> basis(r);
    for (std::size_t j = 0; j < r; ++j) {
        BigInt cof = m / q[j], inv;
        BigInt cof_mod = cof % q[j];
        mpz_invert(inv.get_mpz_t(), cof_mod.get_mpz_t(), q[j].get_mpz_t());
        basis[j] = cof * inv % m;
    }
    std::vector<BigInt> table(std::size_t{1} << r);
    for (std::size_t mask = 0; mask < table.size(); ++mask) {
        BigInt s = 0;
        for (std::size_t j = 0; j < r; ++j)
            if (!((mask >> j) & 1))
                s += basis[j];
        table[mask] = s % m;
    }
    return table;
}

BigInt mod(const BigInt& a, const BigInt& n)
{
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

u64 mask_of(IndexSet s) { return s.bits(); }

// Sum of table[J] over the J with lower <= J <= upper and, if given, |J| = size.
BigInt interval_sum(const std::vector<BigInt>& d, u64 lower, u64 upper, int size = -1)
{
    BigInt s = 0;
    for (u64 J = 0; J < d.size(); ++J)
        if ((J & lower) == lower && (J & ~upper) == 0 && (size < 0 || std::popcount(J) == size))
            s += d[J];
    return s;
}

std::optional<BigInt> base_lhs(IdentityId id, const IdentityParams& p, const std::vector<BigInt>& d,
                               unsigned r)
{
    const u64 R = (u64{1} << r) - 1;
    auto top = [&](u64 i) { return d[R & ~(u64{1} << i)]; };
    switch (id) {
    case IdentityId::ComplementSum:
        return d[mask_of(*p.I)] + d[R & ~mask_of(*p.I)];
    case IdentityId::PrimitiveSum: {
        BigInt s = 0;
        for (unsigned i = 0; i < r; ++i)
            if (!((mask_of(*p.J) >> i) & 1))
                s += top(i);
        return s;
    }
    case IdentityId::TopLevelSum: {
        BigInt s = 0;
        for (unsigned i = 0; i < r; ++i)
            s += top(i);
        return s;
    }
    case IdentityId::DisjointUnionSum: {
        BigInt s = 0;
        for (auto part : p.sets)
            s += d[mask_of(part)];
        return s;
    }
    case IdentityId::LevelSum:
        return interval_sum(d, 0, R, static_cast<int>(*p.k));
    case IdentityId::BelowNLevels: {
        const u64 I = mask_of(*p.I);
        return interval_sum(d, 0, I, std::popcount(I) - static_cast<int>(*p.n));
    }
    case IdentityId::SublatticeSum:
        return interval_sum(d, 0, mask_of(*p.I));
    case IdentityId::AllIdempotentSum:
        return interval_sum(d, 0, R);
    default:
        return std::nullopt;
    }
}

BigInt general_lhs(IdentityId id, const IdentityParams& p, const std::vector<BigInt>& d, const BigInt& m,
                   u64 S, u64 T)
{
    auto top = [&](unsigned i) { return d[S & ~(u64{1} << i)]; };
    switch (id) {
    case IdentityId::GenProduct: {
        BigInt s = 1;
        for (auto part : p.sets)
            s = s * d[mask_of(part)] % m;
        return s;
    }
    case IdentityId::GenUnionSum:
        return d[mask_of(*p.I)] + d[mask_of(*p.J)];
    case IdentityId::GenDisjointSum: {
        BigInt s = 0;
        for (auto part : p.sets)
            s += d[mask_of(part)];
        return s;
    }
    case IdentityId::GenDualSum: {
        const u64 I = mask_of(*p.I);
        return d[I] + d[S & ~(I & ~T)];
    }
    case IdentityId::GenSubsetSum: {
        BigInt s = 0;
        const u64 own = mask_of(*p.I) & ~T;
        for (unsigned i = 0; i < 64; ++i)
            if ((own >> i) & 1)
                s += top(i);
        return s;
    }
    case IdentityId::GenPrimitiveSum: {
        BigInt s = 0;
        const u64 own = S & ~mask_of(*p.J);
        for (unsigned i = 0; i < 64; ++i)
            if ((own >> i) & 1)
                s += top(i);
        return s;
    }
    case IdentityId::GenLevelSum:
        return interval_sum(d, T, S, static_cast<int>(*p.k));
    case IdentityId::GenBelowNLevels: {
        const u64 I = mask_of(*p.I);
        return interval_sum(d, T, I, std::popcount(I) - static_cast<int>(*p.n));
    }
    case IdentityId::GenSublatticeSum:
        return interval_sum(d, T, mask_of(*p.I));
    default:
        return -1;
    }
}

std::string describe(const FactoredModulus& m, IdentityId id, const IdentityParams& p)
{
    std::ostringstream out;
    out << to_string(id) << " m=" << str(m.value());
    if (p.I)
        out << " I=" << to_string(*p.I);
    if (p.J)
        out << " J=" << to_string(*p.J);
    if (p.S)
        out << " S=" << to_string(*p.S);
    if (p.T)
        out << " T=" << to_string(*p.T);
    if (p.k)
        out << " k=" << *p.k;
    if (p.n)
        out << " n=" << *p.n;
    return out.str();
}

// ---------------------------------------------------------------------------

void idempotent_structure(Tally& t)
{
    std::size_t moduli = 0;
    for (u64 n = 2; n <= 10'000; ++n) {
        const auto f = oracle::factor(n);
        if (f.size() > 4)
            continue;
        ++moduli;
        const auto m = factorize(BigInt(n));
        const auto brute = oracle::idempotents(n);
        std::vector<u64> got;
        for (const auto& d : enumerate_idempotents(m)) {
            got.push_back(d.value().get_ui());
            for (unsigned i = 1; i <= m.rank(); ++i) {
                const u64 q = m.prime_power(i).get_ui();
                const u64 want = d.set().contains(i) ? 0 : 1 % q;
                t.check(d.value().get_ui() % q == want,
                        [&] { return "m=" + std::to_string(n) + " d" + to_string(d.set()) + " wrong residue"; });
            }
        }
        std::sort(got.begin(), got.end());
        t.check(got == brute && got.size() == (std::size_t{1} << f.size()),
                [&] { return "m=" + std::to_string(n) + " idempotent set differs from brute force"; });
    }

    std::mt19937_64 rng(101);
    std::size_t scanned = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned r = 5 + static_cast<unsigned>(rng() % 2);
        const auto m = oracle::random_modulus(rng, r, 1u << 20);
        const auto table = crt_table(prime_powers(m));
        const auto ds = enumerate_idempotents(m);
        std::set<BigInt> values;
        for (const auto& d : ds) {
            values.insert(d.value());
            t.check(d.value() == table[mask_of(d.set())] && mod(d.value() * d.value(), m.value()) == d.value(),
                    [&] { return "m=" + str(m.value()) + " d" + to_string(d.set()) + " mismatch"; });
        }
        t.check(ds.size() == (std::size_t{1} << r) && values.size() == ds.size(),
                [&] { return "m=" + str(m.value()) + " does not have 2^r distinct idempotents"; });
        const std::set<BigInt> oracle_values(table.begin(), table.end());
        t.check(values == oracle_values, [&] { return "m=" + str(m.value()) + " set differs from CRT lifts"; });
        if (m.value() <= 10'000'000) {
            ++scanned;
            const u64 n = m.value().get_ui();
            std::set<BigInt> brute;
            for (u64 x : oracle::idempotents(n))
                brute.insert(BigInt(static_cast<unsigned long>(x)));
            t.check(values == brute, [&] { return "m=" + std::to_string(n) + " differs from scan"; });
        }
    }
    t.note(std::to_string(moduli) + " moduli with r <= 4 scanned; 100 random r in {5,6} (" +
           std::to_string(scanned) + " also scanned)");
}

void base_catalog(Tally& t)
{
    std::mt19937_64 rng(202);
    std::size_t random_instances = 0;
    for (auto id : base_identities()) {
        const bool odd = id == IdentityId::OddSumIdempotentCriterion;
        int done = 0;
        while (done < 500) {
            const unsigned r = 1 + static_cast<unsigned>(rng() % 6);
            const auto p = instances::random_base_params(rng, id, r);
            if (!p)
                continue;
            const auto m = oracle::random_modulus(rng, r, 1u << 20, odd);
            ++done;
            ++random_instances;
            const auto rep = verify_identity(m, id, *p);
            const auto d = crt_table(prime_powers(m));
            t.check(rep.all_hold(), [&] { return describe(m, id, *p) + " does not hold"; });
            if (odd) {
                const BigInt s = mod(d[mask_of(*p->I)] + d[mask_of(*p->J)], m.value());
                const bool squared = mod(s * s, m.value()) == s;
                t.check((rep.lhs == 1) == squared, [&] { return describe(m, id, *p) + " misreports idempotency"; });
            } else if (auto lhs = base_lhs(id, *p, d, r)) {
                t.check(rep.lhs == mod(*lhs, m.value()), [&] { return describe(m, id, *p) + " lhs differs"; });
            }
        }
    }

    std::size_t exhaustive = 0;
    for (u64 n : {12u, 30u, 210u, 2310u, 3u, 15u, 105u, 1155u}) {
        const auto m = factorize(BigInt(n));
        const auto d = crt_table(prime_powers(m));
        for (auto id : base_identities()) {
            if (n % 2 == 1 && id != IdentityId::OddSumIdempotentCriterion)
                continue;
            const auto all = enumerate_params(m, id);
            t.check(!all.empty() || id == IdentityId::OddSumIdempotentCriterion,
                    [&] { return std::string(to_string(id)) + " has no parameters at " + std::to_string(n); });
            for (const auto& p : all) {
                ++exhaustive;
                const auto rep = verify_identity(m, id, p);
                t.check(rep.all_hold(), [&] { return describe(m, id, p) + " does not hold"; });
                if (auto lhs = base_lhs(id, p, d, static_cast<unsigned>(m.rank())))
                    t.check(rep.lhs == mod(*lhs, m.value()), [&] { return describe(m, id, p) + " lhs differs"; });
            }
        }
    }
    t.note(std::to_string(random_instances) + " random and " + std::to_string(exhaustive) +
           " exhaustive instances");
}

void general_catalog(Tally& t)
{
    std::mt19937_64 rng(303);
    std::size_t random_instances = 0;
    for (auto id : general_identities()) {
        int done = 0;
        while (done < 500) {
            const unsigned r = 1 + static_cast<unsigned>(rng() % 8);
            const IndexSet R = IndexSet::full(r);
            const IndexSet S = instances::random_subset(rng, R);
            const IndexSet T = instances::random_subset(rng, S);
            if ((S - T).size() > 6)
                continue;
            const auto p = instances::random_general_params(rng, id, S, T);
            if (!p)
                continue;
            const auto m = oracle::random_modulus(rng, r, 1u << 20);
            ++done;
            ++random_instances;
            const auto q = prime_powers(m);
            BigInt gS = 1;
            for (unsigned i : S.members())
                gS *= q[i - 1];
            const auto rep = verify_general_identity(consistent_lattice(m, S, T), id, *p);
            const auto d = crt_table(q);
            const BigInt lhs = general_lhs(id, *p, d, m.value(), S.bits(), T.bits());
            auto what = [&] {
                IdentityParams shown = *p;
                shown.S = S;
                shown.T = T;
                return describe(m, id, shown);
            };
            t.check(rep.all_hold(), [&] { return what() + " does not hold"; });
            t.check(rep.reduction_modulus == gS && rep.lhs == mod(lhs, gS), [&] { return what() + " lhs differs"; });
        }
    }

    // Specialization at S = R, T = {} against the base catalog.
    std::set<std::string> reached;
    std::size_t specialized = 0;
    auto specialize_check = [&](const FactoredModulus& m, IdentityId id, const IdentityParams& p) {
        const IndexSet R = IndexSet::full(m.rank());
        const auto rep = verify_general_identity(full_lattice(m), id, p);
        t.check(rep.all_hold(), [&] { return describe(m, id, p) + " does not hold on the full lattice"; });
        const auto base = specialize(id, p, R);
        if (!base)
            return;
        ++specialized;
        reached.insert(std::string(to_string(base->first)));
        const auto b = verify_identity(m, base->first, base->second);
        t.check(b.all_hold() && b.lhs == rep.lhs && b.rhs == rep.rhs,
                [&] { return describe(m, id, p) + " does not reproduce " + std::string(to_string(base->first)); });
    };
    for (u64 n : {12u, 30u, 210u, 2310u}) {
        const auto m = factorize(BigInt(n));
        for (auto id : general_identities())
            for (const auto& p : enumerate_general_params(full_lattice(m), id))
                specialize_check(m, id, p);
    }
    for (auto id : general_identities())
        for (int i = 0; i < 200; ++i) {
            const unsigned r = 1 + static_cast<unsigned>(rng() % 6);
            const auto p = instances::random_general_params(rng, id, IndexSet::full(r), IndexSet{});
            if (p)
                specialize_check(oracle::random_modulus(rng, r, 1u << 20), id, *p);
        }
    std::string names;
    for (const auto& s : reached)
        names += (names.empty() ? "" : ",") + s;
    t.note(std::to_string(random_instances) + " random instances; " + std::to_string(specialized) +
           " specializations reaching " + names);
}

void lattice_characterization(Tally& t)
{
    for (u64 n = 2; n <= 2000; ++n) {
        const auto f = oracle::factor(n);
        const auto m = factorize(BigInt(n));
        const std::size_t size = std::size_t{1} << f.size();
        std::vector<u64> g(size, 1);
        for (u64 mask = 0; mask < size; ++mask)
            for (std::size_t i = 0; i < f.size(); ++i)
                if ((mask >> i) & 1)
                    for (unsigned e = 0; e < f[i].second; ++e)
                        g[mask] *= f[i].first;
        std::vector<Idempotent> ds;
        for (u64 mask = 0; mask < size; ++mask) {
            ds.push_back(idempotent_from_set(m, IndexSet(mask)));
            t.check(ds.back().g() == BigInt(static_cast<unsigned long>(g[mask])),
                    [&] { return "m=" + std::to_string(n) + " g differs from the prime-power product"; });
        }
        for (u64 a = 0; a < size; ++a)
            for (u64 b = 0; b < size; ++b) {
                const bool sub = (a & ~b) == 0;
                const bool div = g[b] % g[a] == 0;
                const auto& da = ds[a];
                const auto& db = ds[b];
                t.check(sub == div && leq(da, db) == sub && leq_by_divisibility(da, db) == sub,
                        [&] { return "m=" + std::to_string(n) + " order mismatch"; });
                const u64 l = std::lcm(g[a], g[b]);
                const u64 c = std::gcd(g[a], g[b]);
                t.check(join(da, db).g() == BigInt(static_cast<unsigned long>(l)) &&
                            meet(da, db).g() == BigInt(static_cast<unsigned long>(c)),
                        [&] { return "m=" + std::to_string(n) + " join/meet differ from lcm/gcd"; });
            }
    }
}

void power_graph_structure(Tally& t)
{
    for (u64 n = 2; n <= 2000; ++n) {
        const auto m = factorize(BigInt(n));
        const unsigned r = static_cast<unsigned>(m.rank());
        const std::size_t classes = std::size_t{1} << r;
        const auto table = crt_table(prime_powers(m));
        auto fail = [&](const std::string& s) { return [s, n] { return "m=" + std::to_string(n) + " " + s; }; };

        std::vector<long> owner(n, -1);
        std::size_t nonempty = 0;
        for (u64 mask = 0; mask < classes; ++mask) {
            const auto members = component_elements(m, IndexSet(mask));
            nonempty += !members.empty();
            for (u64 x : members) {
                t.check(owner[x] == -1, fail(std::to_string(x) + " lies in two components"));
                owner[x] = static_cast<long>(mask);
            }
        }
        t.check(nonempty == classes && std::count(owner.begin(), owner.end(), -1) == 0,
                fail("components are not a partition into 2^r classes"));

        std::vector<char> periodic(n, 0);
        std::vector<u64> position(n, n);
        for (u64 a = 0; a < n; ++a) {
            const auto [tail, cycle] = oracle::tail_and_cycle(a, n, position);
            periodic[a] = tail.empty();
            std::vector<u64> ids;
            for (u64 x : cycle)
                if (x * x % n == x)
                    ids.push_back(x);
            for (u64 x : tail)
                if (x * x % n == x)
                    ids.push_back(x);
            const auto c = component_of(m, BigInt(a));
            t.check(ids.size() == 1 && c.idempotent.value() == ids[0] &&
                        static_cast<long>(c.set.bits()) == owner[a] &&
                        table[static_cast<u64>(owner[a])] == ids[0],
                    fail("orbit of " + std::to_string(a) + " disagrees with component_of"));
        }

        for (u64 mask = 0; mask < classes; ++mask) {
            const u64 d = table[mask].get_ui();
            std::vector<u64> want;
            for (u64 u = 1; u < n; ++u)
                if (std::gcd(u, n) == 1)
                    want.push_back(d * u % n);
            std::sort(want.begin(), want.end());
            want.erase(std::unique(want.begin(), want.end()), want.end());
            std::vector<u64> periodic_members;
            for (u64 a = 0; a < n; ++a)
                if (owner[a] == static_cast<long>(mask) && periodic[a])
                    periodic_members.push_back(a);
            auto cyc = cycle_elements(m, IndexSet(mask));
            std::sort(cyc.begin(), cyc.end());
            t.check(cyc == want && cyc == periodic_members, fail("cycle_elements differs from d_I*U"));

            std::vector<char> in(n, 0);
            for (u64 a : cyc)
                in[a] = 1;
            bool group = in[d] != 0;
            for (u64 a : cyc) {
                bool inverse = false;
                group = group && a * d % n == a;
                for (u64 b : cyc) {
                    const u64 ab = a * b % n;
                    group = group && in[ab];
                    inverse = inverse || ab == d;
                }
                group = group && inverse;
                if (!group)
                    break;
            }
            t.check(group, fail("cycle of d=" + std::to_string(d) + " is not a group with identity d"));
        }

        if (n > 500)
            continue;
        // Weakly connected components of the exported DOT edges.
        std::vector<u64> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<u64(u64)> find = [&](u64 x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        const std::string dot = export_power_graph(m);
        static const std::regex edge(R"(v(\d+) -> v(\d+);)");
        std::set<std::pair<u64, u64>> exported;
        for (auto it = std::sregex_iterator(dot.begin(), dot.end(), edge); it != std::sregex_iterator(); ++it) {
            const u64 a = std::stoull((*it)[1]);
            const u64 b = std::stoull((*it)[2]);
            exported.insert({a, b});
            parent[find(a)] = find(b);
        }
        std::size_t components = 0;
        for (u64 v = 0; v < n; ++v)
            components += find(v) == v;
        std::set<std::pair<u64, u64>> naive;
        for (u64 c = 0; c < n; ++c) {
            u64 x = c;
            for (u64 i = 0; i <= n; ++i) {
                const u64 y = x * c % n;
                naive.insert({x, y});
                x = y;
            }
        }
        t.check(components == classes && exported == naive,
                fail("exported power graph has " + std::to_string(components) + " components"));
    }
}

void exponentiation(Tally& t)
{
    std::size_t evaluations = 0;
    std::size_t moduli = 0;
    for (u64 n = 2; n <= 3000; ++n) {
        const auto f = oracle::factor(n);
        if (f.size() > 4)
            continue;
        ++moduli;
        const auto m = factorize(BigInt(n));
        unsigned max_e = 0;
        for (auto [p, e] : f)
            max_e = std::max(max_e, e);
        for (auto kind : {TotientKind::Euler, TotientKind::Carmichael}) {
            const ExpEngine engine(m, {.totient = kind});
            for (u64 b = 0; b < n; ++b) {
                const bool unit = std::gcd(b, n) == 1;
                bool periodic = true;  // b is 0 or a unit modulo every prime power
                for (auto [p, e] : f) {
                    u64 q = 1;
                    for (unsigned i = 0; i < e; ++i)
                        q *= p;
                    periodic = periodic && (b % q == 0 || b % p != 0);
                }
                u64 power = 1 % n;
                for (u64 e = 0; e <= 40; ++e) {
                    ++evaluations;
                    auto where = [&] {
                        return std::to_string(b) + "^" + std::to_string(e) + " mod " + std::to_string(n) + " (" +
                               std::string(to_string(kind)) + ")";
                    };
                    t.check(engine.evaluate(b, e).value == power && pow_mod(b, e, n) == power,
                            [&] { return where() + " dispatcher"; });
                    if (unit)
                        t.check(engine.formula(Strategy::Unit, b, e) == power, [&] { return where() + " unit"; });
                    if (periodic && e >= 1)
                        t.check(engine.formula(Strategy::Cycle, b, e) == power, [&] { return where() + " cycle"; });
                    if (e >= max_e)
                        t.check(engine.formula(Strategy::General, b, e) == power,
                                [&] { return where() + " general"; });
                    power = power * b % n;
                }
            }
        }
    }
    t.note(std::to_string(moduli) + " moduli, " + std::to_string(evaluations) + " (m, b, e, totient) cases");
}

// A random factored modulus below 2^64 with primes of mixed sizes.
FactoredModulus random_word_modulus(std::mt19937_64& rng)
{
    for (;;) {
        const unsigned r = 1 + static_cast<unsigned>(rng() % 8);
        std::vector<PrimePower> factors;
        std::set<BigInt> used;
        BigInt m = 1;
        for (unsigned i = 0; i < r; ++i) {
            const unsigned budget = 64 - static_cast<unsigned>(mpz_sizeinbase(m.get_mpz_t(), 2));
            if (budget < 3)
                break;
            const unsigned bits = 2 + static_cast<unsigned>(rng() % std::max(1u, budget / (r - i) - 1));
            BigInt p(static_cast<unsigned long>(rng() >> (64 - bits)));
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
            if (used.count(p))
                continue;
            const unsigned e = 1 + static_cast<unsigned>(rng() % (bits < 8 ? 4 : 2));
            BigInt q;
            mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e);
            if (mpz_sizeinbase(BigInt(m * q).get_mpz_t(), 2) > 64)
                continue;
            m *= q;
            used.insert(p);
            factors.push_back({p, e});
        }
        if (!factors.empty())
            return FactoredModulus::from_factors(std::move(factors));
    }
}

BigInt random_below(std::mt19937_64& rng, const BigInt& n)
{
    BigInt x = 0;
    for (int i = 0; i < 3; ++i)
        x = (x << 64) + BigInt(static_cast<unsigned long>(rng()));
    return x % n;
}

void dispatcher_totality(Tally& t)
{
    std::mt19937_64 rng(707);
    std::map<Strategy, std::size_t> seen;
    std::size_t triples = 0;
    while (triples < 100'000) {
        const auto m = random_word_modulus(rng);
        const auto q = prime_powers(m);
        const BigInt n = m.value();
        for (int k = 0; k < 100; ++k, ++triples) {
            // Per prime power: a unit, zero, or a nonzero multiple of p.
            BigInt b = 0;
            const int kind = static_cast<int>(rng() % 3);
            if (kind == 0) {
                b = random_below(rng, n);
            } else {
                std::vector<Congruence> system;
                for (unsigned i = 1; i <= m.rank(); ++i) {
                    const BigInt& p = m.prime(i);
                    const BigInt& qi = q[i - 1];
                    BigInt x = random_below(rng, qi);
                    switch (rng() % 3) {
                    case 0:
                        x = 0;
                        break;
                    case 1:
                        if (kind == 2 || m.exponent(i) == 1)
                            x = 0;
                        else
                            x = p * (1 + random_below(rng, qi / p - 1));
                        break;
                    default:
                        while (gcd(x, p) != 1)
                            x = random_below(rng, qi);
                    }
                    system.push_back({x, qi});
                }
                const auto d = crt_table(q);
                // Recombine with the explicit basis rather than the library CRT.
                for (std::size_t i = 0; i < system.size(); ++i)
                    b += system[i].residue * d[((std::size_t{1} << system.size()) - 1) & ~(std::size_t{1} << i)];
                b %= n;
            }
            BigInt e;
            if (rng() % 8 == 0) {
                e = static_cast<unsigned long>(rng() % (m.max_exponent() + 1));
            } else {
                const unsigned bits = static_cast<unsigned>(rng() % 129);
                e = (BigInt(static_cast<unsigned long>(rng())) << 64) + BigInt(static_cast<unsigned long>(rng()));
                e >>= 128 - bits;
            }
            const ExpOptions options{.totient = rng() % 2 ? TotientKind::Euler : TotientKind::Carmichael,
                                     .reduction = rng() % 4 ? PowerReduction::ModM : PowerReduction::PerPrimeCrt,
                                     .force_bigint = rng() % 4 == 0};
            const auto got = rng() % 2 ? modexp_auto(m, b, e, options.totient) : ExpEngine(m, options).run(b, e);
            ++seen[got.plan.strategy];
            t.check(got.value == oracle::gmp_powm(b, e, n),
                    [&] { return str(b) + "^" + str(e) + " mod " + str(n) + " via " + std::string(to_string(got.plan.strategy)); });
        }
    }

    std::size_t reports = 0;
    for (int i = 0; i < 12; ++i) {
        const auto m = i < 8 ? random_word_modulus(rng) : oracle::random_modulus(rng, 2 + i % 5, 1u << 20);
        BenchConfig config;
        config.samples = 2000;
        config.exponent_bits = i % 2 ? 128 : 64;
        config.seed = 1 + static_cast<u64>(i);
        config.options.totient = i % 3 ? TotientKind::Euler : TotientKind::Carmichael;
        config.options.reduction = i % 4 ? PowerReduction::ModM : PowerReduction::PerPrimeCrt;
        config.options.force_bigint = i == 5;
        const auto report = bench_compare(m, config);
        ++reports;
        t.check(report.mismatches == 0,
                [&] { return "bench on m=" + str(m.value()) + " reported " + std::to_string(report.mismatches); });
    }
    std::string mix;
    for (auto [s, c] : seen)
        mix += std::string(mix.empty() ? "" : ", ") + std::string(to_string(s)) + " " + std::to_string(c);
    t.note(std::to_string(triples) + " triples (" + mix + "); " + std::to_string(reports) + " bench reports");
}

void desk_examples(Tally& t)
{
    const u64 n = 30;
    const auto m = factorize(BigInt(n));
    const auto brute = oracle::idempotents(n);
    const std::vector<u64> listed{0, 1, 6, 10, 15, 16, 21, 25};
    std::vector<u64> got;
    for (const auto& d : enumerate_idempotents(m))
        got.push_back(d.value().get_ui());
    std::sort(got.begin(), got.end());
    t.check(brute == listed && got == brute, [] { return "idempotents of 30"; });

    // Oracle level sums from the scanned idempotents, classified by residue pattern.
    const std::vector<u64> q{2, 3, 5};
    for (unsigned k : {1u, 2u}) {
        u64 sum = 0;
        for (u64 mask = 0; mask < 8; ++mask)
            if (static_cast<unsigned>(std::popcount(mask)) == k)
                sum += oracle::idempotent_by_pattern(n, q, mask);
        const auto rep = verify_identity(m, IdentityId::LevelSum, {.k = k});
        const u64 expected = k == 1 ? 2 : 1;
        t.check(sum % n == expected && rep.holds && rep.lhs == expected && rep.rhs == expected,
                [&] { return "level " + std::to_string(k) + " sum"; });
    }

    {
        u64 sum = 0;
        for (u64 mask : {0u, 1u, 2u, 3u})
            sum += oracle::idempotent_by_pattern(n, q, mask);
        const auto rep = verify_identity(m, IdentityId::SublatticeSum, {.I = IndexSet::of({1, 2}), .k = 2});
        t.check(sum % n == 14 && rep.holds && rep.lhs == 14 && rep.rhs == 14, [] { return "sublattice sum"; });
    }
    {
        // I = {1,2}, dual S \ (I \ T) = {1,3}.
        const u64 sum = oracle::idempotent_by_pattern(n, q, 0b011) + oracle::idempotent_by_pattern(n, q, 0b101);
        const u64 dT = oracle::idempotent_by_pattern(n, q, 0b001);
        const auto rep = verify_general_identity(consistent_lattice(m, IndexSet::full(3), IndexSet::of({1})),
                                                 IdentityId::GenDualSum, {.I = IndexSet::of({1, 2})});
        t.check(sum % n == 16 && dT == 16 && rep.holds && rep.lhs == 16 && rep.rhs == 16,
                [] { return "dual sum"; });
    }
    {
        const auto unit = modexp_auto(m, 7, 5);
        t.check(oracle::power_by_repetition(7, 5, n) == 7 && unit.value == 7 && unit.plan.strategy == Strategy::Unit,
                [] { return "7^5 mod 30"; });
        const auto cycle = modexp_auto(m, 2, 5);
        t.check(oracle::power_by_repetition(2, 5, n) == 2 && cycle.value == 2 &&
                    cycle.plan.strategy == Strategy::Cycle,
                [] { return "2^5 mod 30"; });
    }
}

struct Criterion {
    const char* title;
    void (*run)(Tally&);
};

} // namespace

int main()
{
    const Criterion criteria[] = {
        {"idempotent structure", idempotent_structure},
        {"identity catalog mod m", base_catalog},
        {"generalized identity catalog mod g_S", general_catalog},
        {"lattice double characterization", lattice_characterization},
        {"power-graph structure", power_graph_structure},
        {"exponentiation theorems", exponentiation},
        {"dispatcher totality", dispatcher_totality},
        {"worked desk examples", desk_examples},
    };
    int failed = 0;
    int number = 0;
    for (const auto& c : criteria) {
        ++number;
        Tally t;
        std::string error;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(t);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = error.empty() && t.failures() == 0 && t.checks() > 0;
        failed += !pass;
        std::printf("%s %d %s: %zu checks, %zu failures, %.1f s", pass ? "PASS" : "FAIL", number, c.title,
                    t.checks(), t.failures(), seconds);
        for (const auto& n : t.notes())
            std::printf("; %s", n.c_str());
        std::printf("\n");
        for (const auto& msg : t.messages())
            std::printf("    %s\n", msg.c_str());
        if (!error.empty())
            std::printf("    exception: %s\n", error.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", number - failed, number);
    return failed == 0 ? 0 : 1;
}
