#include "idem/serialize.hpp"

#include "idem/error.hpp"

namespace idem {

namespace {

std::string dec(const BigInt& x) { return x.get_str(); }

[[noreturn]] void malformed(const std::string& what)
{
    throw Error(Errc::ParseError, "malformed JSON: " + what);
}

BigInt big_from(const Json& j, const char* field)
{
    if (!j.contains(field) || !j.at(field).is_string())
        malformed(std::string("\"") + field + "\" must be a decimal string");
    return parse_bigint(j.at(field).get<std::string>());
}

BigInt big_value(const Json& j)
{
    if (!j.is_string())
        malformed("expected a decimal string");
    return parse_bigint(j.get<std::string>());
}

Json timing(const TimingStats& t)
{
    return {{"count", t.count}, {"median", t.median_ns}, {"p95", t.p95_ns}};
}

} // namespace

Json to_json(const FactoredModulus& m)
{
    Json factors = Json::array();
    for (const auto& f : m.factors())
        factors.push_back({dec(f.prime), std::to_string(f.exponent)});
    return {{"m", dec(m.value())}, {"factors", factors}};
}

FactoredModulus factored_modulus_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("factors") || !j.at("factors").is_array())
        malformed("factored modulus needs a \"factors\" array");
    std::vector<PrimePower> factors;
    for (const auto& f : j.at("factors")) {
        if (!f.is_array() || f.size() != 2)
            malformed("each factor is a [\"p\", \"e\"] pair");
        const BigInt e = big_value(f.at(1));
        if (e < 1 || !e.fits_uint_p())
            malformed("exponent out of range");
        factors.push_back({big_value(f.at(0)), static_cast<unsigned>(e.get_ui())});
    }
    auto m = FactoredModulus::from_factors(std::move(factors));
    if (j.contains("m") && big_from(j, "m") != m.value())
        malformed("\"m\" does not equal the product of its factors");
    return m;
}

Json to_json(IndexSet s) { return s.members(); }

IndexSet index_set_from_json(const Json& j)
{
    if (!j.is_array())
        malformed("index set must be an array");
    IndexSet s;
    for (const auto& i : j) {
        if (!i.is_number_unsigned())
            malformed("indices are positive integers");
        s = s.with(i.get<unsigned>());
    }
    return s;
}

Json to_json(const Idempotent& d)
{
    return {{"I", to_json(d.set())}, {"d", dec(d.value())}, {"g", dec(d.g())}};
}

Idempotent idempotent_from_json(const Json& j, const FactoredModulus& m)
{
    if (!j.is_object() || !j.contains("I"))
        malformed("idempotent needs \"I\"");
    auto d = idempotent_from_set(m, index_set_from_json(j.at("I")));
    if (big_from(j, "d") != d.value() || big_from(j, "g") != d.g())
        malformed("recorded d/g do not match the idempotent of " + to_string(d.set()));
    return d;
}

Json to_json(const IdentityParams& p)
{
    Json j = Json::object();
    if (p.I)
        j["I"] = to_json(*p.I);
    if (p.J)
        j["J"] = to_json(*p.J);
    if (!p.sets.empty()) {
        Json sets = Json::array();
        for (auto s : p.sets)
            sets.push_back(to_json(s));
        j["sets"] = sets;
    }
    if (p.k)
        j["k"] = *p.k;
    if (p.n)
        j["n"] = *p.n;
    if (p.S)
        j["S"] = to_json(*p.S);
    if (p.T)
        j["T"] = to_json(*p.T);
    return j;
}

IdentityParams identity_params_from_json(const Json& j)
{
    if (!j.is_object())
        malformed("params must be an object");
    IdentityParams p;
    auto count = [&](const char* f) -> std::optional<unsigned> {
        if (!j.contains(f))
            return std::nullopt;
        if (!j.at(f).is_number_unsigned())
            malformed(std::string("\"") + f + "\" must be a nonnegative integer");
        return j.at(f).get<unsigned>();
    };
    if (j.contains("I"))
        p.I = index_set_from_json(j.at("I"));
    if (j.contains("J"))
        p.J = index_set_from_json(j.at("J"));
    if (j.contains("sets")) {
        if (!j.at("sets").is_array())
            malformed("\"sets\" must be an array");
        for (const auto& s : j.at("sets"))
            p.sets.push_back(index_set_from_json(s));
    }
    p.k = count("k");
    p.n = count("n");
    if (j.contains("S"))
        p.S = index_set_from_json(j.at("S"));
    if (j.contains("T"))
        p.T = index_set_from_json(j.at("T"));
    return p;
}

Json to_json(const IdentityReport& r)
{
    Json corollaries = Json::array();
    for (const auto& c : r.corollaries)
        corollaries.push_back({{"label", c.label},
                               {"modulus", dec(c.modulus)},
                               {"lhs", dec(c.lhs)},
                               {"rhs", dec(c.rhs)},
                               {"holds", c.holds}});
    return {{"identity_id", std::string(to_string(r.identity_id))},
            {"modulus", to_json(r.modulus)},
            {"reduction_modulus", dec(r.reduction_modulus)},
            {"params", to_json(r.params)},
            {"lhs", dec(r.lhs)},
            {"rhs", dec(r.rhs)},
            {"holds", r.holds},
            {"corollaries", corollaries}};
}

IdentityReport identity_report_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("identity_id") || !j.at("identity_id").is_string())
        malformed("report needs \"identity_id\"");
    if (!j.contains("holds") || !j.at("holds").is_boolean())
        malformed("report needs boolean \"holds\"");
    IdentityReport r{parse_identity_id(j.at("identity_id").get<std::string>()),
                     factored_modulus_from_json(j.at("modulus")),
                     identity_params_from_json(j.value("params", Json::object())),
                     big_from(j, "reduction_modulus"),
                     big_from(j, "lhs"),
                     big_from(j, "rhs"),
                     j.at("holds").get<bool>(),
                     {}};
    if (r.holds != (r.lhs == r.rhs))
        malformed("\"holds\" contradicts lhs/rhs");
    for (const auto& c : j.value("corollaries", Json::array()))
        r.corollaries.push_back({c.at("label").get<std::string>(), big_from(c, "modulus"),
                                 big_from(c, "lhs"), big_from(c, "rhs"), c.at("holds").get<bool>()});
    return r;
}

Json to_json(const ConsistentLattice& lattice, const Limits& limits)
{
    const auto elements = lattice_elements(lattice, limits);
    Json nodes = Json::array();
    for (const auto& e : elements)
        nodes.push_back({{"K", to_json(e.set)},
                         {"g", dec(e.g)},
                         {"d", dec(idempotent_from_set(lattice.modulus(), e.set).value())}});
    Json edges = Json::array();
    for (const auto& [lo, hi] : hasse_edges(lattice, limits))
        edges.push_back({lo, hi});
    return {{"modulus", to_json(lattice.modulus())},
            {"S", to_json(lattice.S())},
            {"T", to_json(lattice.T())},
            {"g_S", dec(lattice.supremum())},
            {"g_T", dec(lattice.infimum())},
            {"elements", nodes},
            {"edges", edges}};
}

Json to_json(const ComponentDescriptor& c)
{
    return {{"I", to_json(c.set)},
            {"multiplier", dec(c.multiplier)},
            {"g", dec(c.g)},
            {"d", dec(c.idempotent.value())},
            {"size", dec(c.size)}};
}

Json to_json(const OrbitDecomposition& o, const FactoredModulus& m)
{
    Json tail = Json::array();
    Json cycle = Json::array();
    for (const auto& x : o.tail)
        tail.push_back(dec(x));
    for (const auto& x : o.cycle)
        cycle.push_back(dec(x));
    Json idems = Json::array();
    for (const auto& x : idempotents_in(o, m))
        idems.push_back(dec(x));
    return {{"base", dec(o.base)},
            {"tail", tail},
            {"cycle", cycle},
            {"tail_length", o.tail_length()},
            {"cycle_length", o.cycle_length()},
            {"idempotents", idems}};
}

Json to_json(const PowerGraph& g)
{
    std::vector<std::vector<std::uint64_t>> adjacency(g.vertex_count());
    for (const auto& [a, b] : g.edges)
        adjacency[a].push_back(b);
    return {{"m", dec(g.modulus.value())},
            {"component_count", g.component_count},
            {"component", g.component},
            {"adjacency", adjacency}};
}

Json to_json(const ExpResult& r)
{
    Json reduced = Json::array();
    for (const auto& x : r.plan.reduced)
        reduced.push_back({x.index, dec(x.exponent)});
    return {{"value", dec(r.value)},
            {"plan",
             {{"strategy", std::string(to_string(r.plan.strategy))},
              {"active_indices", to_json(r.plan.active_indices)},
              {"reduced_exponents", reduced},
              {"totient", std::string(to_string(r.plan.totient_kind))}}}};
}

Json to_json(const BenchReport& r)
{
    Json histogram = Json::object();
    Json dispatcher = Json::object();
    Json baseline = Json::object();
    for (const auto& [s, n] : r.histogram)
        histogram[std::string(to_string(s))] = n;
    for (const auto& [s, t] : r.dispatcher)
        dispatcher[std::string(to_string(s))] = timing(t);
    for (const auto& [s, t] : r.baseline)
        baseline[std::string(to_string(s))] = timing(t);
    dispatcher["overall"] = timing(r.dispatcher_overall);
    baseline["overall"] = timing(r.baseline_overall);
    return {{"config",
             {{"modulus", to_json(r.modulus)},
              {"samples", r.config.samples},
              {"exponent_bits", r.config.exponent_bits},
              {"seed", r.config.seed},
              {"totient", std::string(to_string(r.config.options.totient))},
              {"reduction", std::string(to_string(r.config.options.reduction))}}},
            {"seed", r.config.seed},
            {"strategy_histogram", histogram},
            {"timing_ns", {{"dispatcher", dispatcher}, {"baseline", baseline}}},
            {"mismatches", r.mismatches}};
}

} // namespace idem
