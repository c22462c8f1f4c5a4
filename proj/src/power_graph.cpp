#include "idem/power_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "idem/error.hpp"

namespace idem {

namespace {

std::uint64_t enumerable_modulus(const FactoredModulus& m, std::uint64_t cap, const char* what)
{
    if (!m.fits_word() || m.word() > cap)
        throw Error(Errc::CapExceeded, std::string(what) + " over Z/" + m.value().get_str() +
                                           "Z exceeds the cap of " + std::to_string(cap));
    return m.word();
}

void sort_unique(Residues& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

BigInt multiplier_of(const FactoredModulus& m, IndexSet set)
{
    BigInt pi = 1;
    for (unsigned i : set.members())
        pi *= m.prime(i);
    return pi;
}

struct DisjointSets {
    std::vector<std::uint32_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }

    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

OrbitDecomposition orbit(const FactoredModulus& m, const BigInt& a, const Limits& limits)
{
    const BigInt& n = m.value();
    OrbitDecomposition out;
    out.base = reduce(a, n);

    std::map<BigInt, std::size_t> seen;
    std::vector<BigInt> powers;
    BigInt x = out.base;
    while (true) {
        auto [it, inserted] = seen.emplace(x, powers.size());
        if (!inserted) {
            const auto start = it->second;
            out.tail.assign(powers.begin(), powers.begin() + static_cast<std::ptrdiff_t>(start));
            out.cycle.assign(powers.begin() + static_cast<std::ptrdiff_t>(start), powers.end());
            return out;
        }
        if (powers.size() >= limits.max_orbit_length)
            throw Error(Errc::CapExceeded, "orbit of " + out.base.get_str() + " exceeds " +
                                               std::to_string(limits.max_orbit_length) + " steps");
        powers.push_back(x);
        x = x * out.base % n;
    }
}

std::vector<BigInt> idempotents_in(const OrbitDecomposition& orbit, const FactoredModulus& m)
{
    std::vector<BigInt> out;
    auto scan = [&](const std::vector<BigInt>& part) {
        for (const auto& x : part)
            if (x * x % m.value() == x)
                out.push_back(x);
    };
    scan(orbit.tail);
    scan(orbit.cycle);
    return out;
}

ComponentDescriptor component_descriptor(const FactoredModulus& m, IndexSet set)
{
    auto d = idempotent_from_set(m, set);
    BigInt size = 1;
    for (unsigned i = 1; i <= m.rank(); ++i) {
        if (set.contains(i)) {
            BigInt t;
            mpz_pow_ui(t.get_mpz_t(), m.prime(i).get_mpz_t(), m.exponent(i) - 1);
            size *= t;
        } else {
            size *= euler_phi_prime_power(m.prime(i), m.exponent(i));
        }
    }
    return {set, multiplier_of(m, set), d.g(), std::move(d), std::move(size)};
}

ComponentDescriptor component_of(const FactoredModulus& m, const BigInt& b)
{
    const BigInt x = reduce(b, m.value());
    IndexSet set;
    for (unsigned i = 1; i <= m.rank(); ++i)
        if (mpz_divisible_p(x.get_mpz_t(), m.prime(i).get_mpz_t()))
            set = set.with(i);
    return component_descriptor(m, set);
}

bool is_cycle_element(const FactoredModulus& m, const BigInt& b)
{
    const BigInt x = reduce(b, m.value());
    const auto c = component_of(m, x);
    return c.idempotent.value() * x % m.value() == x;
}

Residues cycle_elements(const FactoredModulus& m, IndexSet set, const Limits& limits)
{
    const std::uint64_t n = enumerable_modulus(m, limits.max_residue_enumeration, "cycle enumeration");
    const std::uint64_t d = idempotent_from_set(m, set).value().get_ui();
    Residues out;
    for (std::uint64_t u = 1; u < n; ++u)
        if (std::gcd(u, n) == 1)
            out.push_back(mul_mod(d, u, n));
    sort_unique(out);
    return out;
}

Residues component_elements(const FactoredModulus& m, IndexSet set, const Limits& limits)
{
    const std::uint64_t n =
        enumerable_modulus(m, limits.max_residue_enumeration, "component enumeration");
    const std::uint64_t pi = multiplier_of(m, set).get_ui();
    const std::uint64_t cofactor = n / g_of(m, set).get_ui();
    Residues out;
    for (std::uint64_t x = 0; x < n; ++x)
        if (std::gcd(x, cofactor) == 1)
            out.push_back(mul_mod(pi, x, n));
    sort_unique(out);
    return out;
}

PowerGraph build_power_graph(const FactoredModulus& m, const Limits& limits)
{
    const std::uint64_t n = enumerable_modulus(m, limits.max_graph_modulus, "power graph");
    PowerGraph g{m, {}, {}, 0};

    // stamp[x] == c + 1 marks x as already visited on the walk from c.
    std::vector<std::uint64_t> stamp(n, 0);
    for (std::uint64_t c = 0; c < n; ++c) {
        std::uint64_t x = c;
        stamp[x] = c + 1;
        while (true) {
            const std::uint64_t next = mul_mod(x, c, n);
            g.edges.emplace_back(x, next);
            if (stamp[next] == c + 1)
                break;
            stamp[next] = c + 1;
            x = next;
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

    DisjointSets sets(n);
    for (const auto& [a, b] : g.edges)
        sets.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    std::vector<std::uint32_t> label(n, UINT32_MAX);
    g.component.resize(n);
    for (std::uint64_t v = 0; v < n; ++v) {
        auto root = sets.find(static_cast<std::uint32_t>(v));
        if (label[root] == UINT32_MAX)
            label[root] = static_cast<std::uint32_t>(g.component_count++);
        g.component[v] = label[root];
    }
    return g;
}

std::string to_dot(const PowerGraph& graph)
{
    const auto& m = graph.modulus;
    const std::uint64_t n = graph.vertex_count();

    // Group vertices by the index set of their component.
    std::map<std::uint64_t, std::vector<std::uint64_t>> clusters;
    for (std::uint64_t v = 0; v < n; ++v)
        clusters[component_of(m, BigInt(v)).set.bits()].push_back(v);

    std::ostringstream out;
    out << "digraph power_graph {\n";
    out << "  label=\"sequential power graph of Z/" << n << "Z\";\n";
    out << "  node [shape=circle];\n";
    std::size_t cluster = 0;
    for (const auto& [bits, members] : clusters) {
        const IndexSet set(bits);
        const auto d = idempotent_from_set(m, set).value().get_ui();
        out << "  subgraph cluster_" << cluster++ << " {\n";
        out << "    label=\"C" << to_string(set) << " d=" << d << "\";\n";
        for (auto v : members) {
            out << "    v" << v << " [label=\"" << v << "\"";
            if (v == d)
                out << ", shape=doublecircle";
            out << "];\n";
        }
        out << "  }\n";
    }
    for (const auto& [a, b] : graph.edges)
        out << "  v" << a << " -> v" << b << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace idem
