#include "cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "idem/error.hpp"
#include "idem/serialize.hpp"

namespace idemtool {

using namespace idem;

namespace {

enum class Format { Text, Json, Dot };

struct Context {
    std::ostream& out;
    std::ostream& err;
    Limits limits;
    Format format;
};

std::uint64_t env_value(const char* (*getenv)(const char*), const char* name, std::uint64_t fallback)
{
    const char* raw = getenv(name);
    if (!raw || !*raw)
        return fallback;
    const std::string text(raw);
    if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 19)
        throw Error(Errc::BadParams, std::string(name) + " must be a positive integer, got '" + text + "'");
    const auto v = std::stoull(text);
    if (v == 0)
        throw Error(Errc::BadParams, std::string(name) + " must be positive");
    return v;
}

const char* system_getenv(const char* name) { return std::getenv(name); }

std::vector<IndexSet> parse_sets(const std::string& text)
{
    std::vector<IndexSet> out;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ';'))
        out.push_back(parse_index_set(part));
    if (out.empty())
        throw Error(Errc::ParseError, "--sets needs at least one set, e.g. \"1,2;3\"");
    return out;
}

std::string params_text(const IdentityParams& p)
{
    std::ostringstream s;
    auto sep = [&, first = true]() mutable {
        if (!first)
            s << ' ';
        first = false;
    };
    if (p.I) {
        sep();
        s << "I=" << to_string(*p.I);
    }
    if (p.J) {
        sep();
        s << "J=" << to_string(*p.J);
    }
    if (!p.sets.empty()) {
        sep();
        s << "sets=";
        for (std::size_t i = 0; i < p.sets.size(); ++i)
            s << (i ? ";" : "") << to_string(p.sets[i]);
    }
    if (p.k) {
        sep();
        s << "k=" << *p.k;
    }
    if (p.n) {
        sep();
        s << "n=" << *p.n;
    }
    if (p.S) {
        sep();
        s << "S=" << to_string(*p.S);
    }
    if (p.T) {
        sep();
        s << "T=" << to_string(*p.T);
    }
    const auto text = s.str();
    return text.empty() ? "(none)" : text;
}

void print_report(std::ostream& out, const IdentityReport& r)
{
    out << to_string(r.identity_id) << " over m = " << r.modulus.value().get_str() << '\n';
    out << "  params: " << params_text(r.params) << '\n';
    out << "  lhs = " << r.lhs.get_str() << ", rhs = " << r.rhs.get_str() << " (mod "
        << r.reduction_modulus.get_str() << ")\n";
    for (const auto& c : r.corollaries)
        out << "  " << c.label << ": " << c.lhs.get_str() << " vs " << c.rhs.get_str() << " (mod "
            << c.modulus.get_str() << ") " << (c.holds ? "holds" : "FAILS") << '\n';
    out << "  holds: " << (r.all_hold() ? "true" : "false") << '\n';
}

void require_format(const Context& ctx, std::initializer_list<Format> allowed, const char* command)
{
    for (auto f : allowed)
        if (f == ctx.format)
            return;
    throw Error(Errc::BadParams, std::string("--format not supported by '") + command + "'");
}

// Parameter flags shared by `identity` and `sublattice`.
struct ParamFlags {
    std::string I, J, sets;
    unsigned k = 0, n = 0;
    CLI::Option* i_opt = nullptr;
    CLI::Option* j_opt = nullptr;
    CLI::Option* sets_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    bool all = false;

    void attach(CLI::App* sub)
    {
        i_opt = sub->add_option("--I", I, "index set I, e.g. 1,2 or {}");
        j_opt = sub->add_option("--J", J, "index set J");
        sets_opt = sub->add_option("--sets", sets, "semicolon-separated sets, e.g. \"1;2,3\"");
        k_opt = sub->add_option("--k", k, "level k");
        n_opt = sub->add_option("--n", n, "number of levels n");
        sub->add_flag("--all", all, "verify every valid parameter instance");
    }

    IdentityParams build() const
    {
        IdentityParams p;
        if (i_opt->count())
            p.I = parse_index_set(I);
        if (j_opt->count())
            p.J = parse_index_set(J);
        if (sets_opt->count())
            p.sets = parse_sets(sets);
        if (k_opt->count())
            p.k = k;
        if (n_opt->count())
            p.n = n;
        return p;
    }

    bool any() const
    {
        return i_opt->count() || j_opt->count() || sets_opt->count() || k_opt->count() || n_opt->count();
    }
};

int emit_reports(Context& ctx, const FactoredModulus& m, IdentityId id,
                 const std::vector<IdentityReport>& reports, bool exhaustive)
{
    std::size_t failures = 0;
    for (const auto& r : reports)
        failures += !r.all_hold();

    if (ctx.format == Format::Json) {
        if (!exhaustive) {
            ctx.out << to_json(reports.front()).dump(2) << '\n';
        } else {
            Json list = Json::array();
            for (const auto& r : reports)
                list.push_back(to_json(r));
            ctx.out << Json{{"identity_id", std::string(to_string(id))},
                            {"modulus", to_json(m)},
                            {"instances", list},
                            {"failures", failures}}
                           .dump(2)
                    << '\n';
        }
    } else if (!exhaustive) {
        print_report(ctx.out, reports.front());
    } else {
        for (const auto& r : reports)
            ctx.out << (r.all_hold() ? "PASS " : "FAIL ") << params_text(r.params) << "  lhs="
                    << r.lhs.get_str() << " rhs=" << r.rhs.get_str() << '\n';
        ctx.out << to_string(id) << " over m = " << m.value().get_str() << ": " << reports.size()
                << " instances, " << failures << " failing\n";
    }
    return failures ? VerificationFailed : Ok;
}

int run_identity(Context& ctx, const FactoredModulus& m, IdentityId id, const ParamFlags& flags,
                 std::optional<IndexSet> S, std::optional<IndexSet> T)
{
    require_format(ctx, {Format::Text, Format::Json}, "identity");
    if (flags.all && flags.any())
        throw Error(Errc::BadParams, "--all cannot be combined with explicit parameters");
    const IndexSet R = IndexSet::full(m.rank());
    std::vector<IdentityReport> reports;
    if (is_general(id)) {
        const auto L = consistent_lattice(m, S.value_or(R), T.value_or(IndexSet{}));
        if (flags.all) {
            for (const auto& p : enumerate_general_params(L, id, ctx.limits))
                reports.push_back(verify_general_identity(L, id, p, ctx.limits));
        } else {
            reports.push_back(verify_general_identity(L, id, flags.build(), ctx.limits));
        }
    } else {
        if (S || T)
            throw Error(Errc::BadParams, std::string(to_string(id)) + " is a mod-m identity; --S/--T do not apply");
        if (flags.all) {
            for (const auto& p : enumerate_params(m, id, ctx.limits))
                reports.push_back(verify_identity(m, id, p, ctx.limits));
        } else {
            reports.push_back(verify_identity(m, id, flags.build(), ctx.limits));
        }
    }
    if (reports.empty()) {
        ctx.err << "no valid parameter instances of " << to_string(id) << " over m = "
                << m.value().get_str() << '\n';
        return UsageError;
    }
    return emit_reports(ctx, m, id, reports, flags.all);
}

int run_idempotents(Context& ctx, const FactoredModulus& m)
{
    require_format(ctx, {Format::Text, Format::Json}, "idempotents");
    const auto ds = enumerate_idempotents(m, ctx.limits);
    if (ctx.format == Format::Json) {
        Json list = Json::array();
        for (const auto& d : ds)
            list.push_back(to_json(d));
        ctx.out << Json{{"modulus", to_json(m)}, {"idempotents", list}}.dump(2) << '\n';
        return Ok;
    }
    ctx.out << "m = " << m.value().get_str() << " = " << to_text(m) << ", r = " << m.rank() << ", "
            << ds.size() << " idempotents\n";
    for (const auto& d : ds)
        ctx.out << "  I=" << std::left << std::setw(12) << to_string(d.set()) << " d=" << std::setw(10)
                << d.value().get_str() << " g=" << d.g().get_str() << '\n';
    return Ok;
}

void print_lattice_text(std::ostream& out, const ConsistentLattice& L, const Limits& limits)
{
    out << "L(m=" << L.modulus().value().get_str() << ", S=" << to_string(L.S())
        << ", T=" << to_string(L.T()) << "): g_S = " << L.supremum().get_str()
        << ", g_T = " << L.infimum().get_str() << ", " << lattice_elements(L, limits).size()
        << " elements\n";
    const unsigned t = L.T().size();
    for (unsigned level = t; level <= L.S().size(); ++level) {
        out << "  level " << level << ":";
        for (const auto& e : lattice_elements(L, limits))
            if (e.set.size() == level)
                out << "  " << to_string(e.set) << " g=" << e.g.get_str()
                    << " d=" << idempotent_from_set(L.modulus(), e.set).value().get_str();
        out << '\n';
    }
}

int run_lattice(Context& ctx, const ConsistentLattice& L, LatticeLabel label)
{
    switch (ctx.format) {
    case Format::Dot:
        ctx.out << to_dot(L, label, ctx.limits);
        break;
    case Format::Json:
        ctx.out << to_json(L, ctx.limits).dump(2) << '\n';
        break;
    case Format::Text:
        print_lattice_text(ctx.out, L, ctx.limits);
        break;
    }
    return Ok;
}

int run_component(Context& ctx, const FactoredModulus& m, const BigInt& b)
{
    require_format(ctx, {Format::Text, Format::Json}, "component");
    const BigInt x = reduce(b, m.value());
    const auto c = component_of(m, x);
    const bool cyc = is_cycle_element(m, x);
    if (ctx.format == Format::Json) {
        Json j = to_json(c);
        j["b"] = x.get_str();
        j["is_cycle_element"] = cyc;
        ctx.out << j.dump(2) << '\n';
        return Ok;
    }
    ctx.out << "b = " << x.get_str() << " lies in C" << to_string(c.set) << '\n'
            << "  multiplier pi = " << c.multiplier.get_str() << '\n'
            << "  g = " << c.g.get_str() << '\n'
            << "  idempotent d = " << c.idempotent.value().get_str() << '\n'
            << "  component size = " << c.size.get_str() << '\n'
            << "  cycle element: " << (cyc ? "yes" : "no") << '\n';
    return Ok;
}

std::string join_values(const std::vector<BigInt>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + v[i].get_str();
    return "[" + out + "]";
}

int run_orbit(Context& ctx, const FactoredModulus& m, const BigInt& a)
{
    require_format(ctx, {Format::Text, Format::Json}, "orbit");
    const auto o = orbit(m, a, ctx.limits);
    if (ctx.format == Format::Json) {
        ctx.out << to_json(o, m).dump(2) << '\n';
        return Ok;
    }
    const auto ids = idempotents_in(o, m);
    ctx.out << "orbit of " << o.base.get_str() << " mod " << m.value().get_str() << '\n'
            << "  tail  (" << o.tail_length() << "): " << join_values(o.tail) << '\n'
            << "  cycle (" << o.cycle_length() << "): " << join_values(o.cycle) << '\n'
            << "  idempotent: " << join_values(ids) << '\n';
    return Ok;
}

int run_graph(Context& ctx, const FactoredModulus& m)
{
    const auto g = build_power_graph(m, ctx.limits);
    switch (ctx.format) {
    case Format::Dot:
        ctx.out << to_dot(g);
        break;
    case Format::Json:
        ctx.out << to_json(g).dump() << '\n';
        break;
    case Format::Text:
        ctx.out << "sequential power graph of Z/" << m.value().get_str() << "Z: " << g.vertex_count()
                << " vertices, " << g.edges.size() << " edges, " << g.component_count
                << " weak components (2^r = " << (std::uint64_t{1} << m.rank()) << ")\n";
        break;
    }
    return g.component_count == (std::size_t{1} << m.rank()) ? Ok : VerificationFailed;
}

ExpPlan forced_plan(const ExpEngine& engine, Strategy s, const BigInt& b, const BigInt& e)
{
    ExpPlan plan;
    plan.strategy = s;
    plan.totient_kind = engine.options().totient;
    const auto& m = engine.modulus();
    plan.active_indices = s == Strategy::Unit ? IndexSet::full(m.rank())
                                              : IndexSet::full(m.rank()) - engine.component_set(b);
    for (unsigned i : plan.active_indices.members()) {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), e.get_mpz_t(), engine.totient(i).get_mpz_t());
        plan.reduced.push_back({i, r});
    }
    return plan;
}

int run_modexp(Context& ctx, const FactoredModulus& m, const BigInt& b, const BigInt& e,
               const std::string& strategy, TotientKind kind, PowerReduction reduction)
{
    require_format(ctx, {Format::Text, Format::Json}, "modexp");
    if (sgn(e) < 0)
        throw Error(Errc::BadParams, "exponent must be nonnegative");
    const ExpEngine engine(m, {.totient = kind, .reduction = reduction});
    const BigInt x = reduce(b, m.value());
    ExpResult result;
    bool baseline = false;
    if (strategy == "auto") {
        result = engine.run(x, e);
    } else if (strategy == "unit") {
        result = {engine.unit(x, e), forced_plan(engine, Strategy::Unit, x, e)};
    } else if (strategy == "cycle") {
        result = {engine.cycle(x, e), forced_plan(engine, Strategy::Cycle, x, e)};
    } else if (strategy == "general") {
        result = {engine.general(x, e), forced_plan(engine, Strategy::General, x, e)};
    } else {
        baseline = true;
        result.value = pow_mod(x, e, m.value());
        result.plan.strategy = Strategy::Fallback;
        result.plan.totient_kind = kind;
    }
    const BigInt expected = pow_mod(x, e, m.value());
    const bool agrees = result.value == expected;

    if (ctx.format == Format::Json) {
        Json j = to_json(result);
        if (baseline)
            j["plan"]["strategy"] = "BASELINE";
        j["baseline"] = expected.get_str();
        j["agrees"] = agrees;
        ctx.out << j.dump(2) << '\n';
    } else {
        ctx.out << result.value.get_str() << '\n';
        ctx.out << "  strategy: " << (baseline ? "BASELINE" : std::string(to_string(result.plan.strategy)))
                << '\n';
        if (!result.plan.reduced.empty()) {
            ctx.out << "  terms over " << to_string(result.plan.active_indices) << ":";
            for (const auto& r : result.plan.reduced)
                ctx.out << "  d_" << r.index << "=" << engine.top_level_idempotent(r.index).get_str()
                        << " e mod " << engine.totient(r.index).get_str() << " = " << r.exponent.get_str();
            ctx.out << '\n';
        }
        ctx.out << "  totient: " << to_string(kind) << '\n';
        ctx.out << "  square-and-multiply: " << expected.get_str() << (agrees ? " (agrees)" : " (MISMATCH)")
                << '\n';
    }
    return agrees ? Ok : VerificationFailed;
}

void print_timing(std::ostream& out, const char* name, const TimingStats& t)
{
    out << "    " << std::left << std::setw(10) << name << " n=" << std::setw(7) << t.count
        << " median=" << std::fixed << std::setprecision(1) << t.median_ns << "ns p95=" << t.p95_ns
        << "ns\n";
    out.unsetf(std::ios::fixed);
}

int run_bench(Context& ctx, const FactoredModulus& m, const BenchConfig& cfg)
{
    require_format(ctx, {Format::Text, Format::Json}, "bench");
    const auto report = bench_compare(m, cfg);
    if (ctx.format == Format::Json) {
        ctx.out << to_json(report).dump(2) << '\n';
    } else {
        ctx.out << "bench m = " << to_text(m) << ", " << cfg.samples << " samples, " << cfg.exponent_bits
                << "-bit exponents, seed " << cfg.seed << ", " << to_string(cfg.options.totient) << ", "
                << to_string(cfg.options.reduction) << '\n';
        for (const auto& [s, count] : report.histogram) {
            ctx.out << "  " << to_string(s) << ": " << count << " samples\n";
            print_timing(ctx.out, "dispatcher", report.dispatcher.at(s));
            print_timing(ctx.out, "baseline", report.baseline.at(s));
        }
        ctx.out << "  overall:\n";
        print_timing(ctx.out, "dispatcher", report.dispatcher_overall);
        print_timing(ctx.out, "baseline", report.baseline_overall);
        ctx.out << "  mismatches: " << report.mismatches << '\n';
    }
    return report.mismatches == 0 ? Ok : VerificationFailed;
}

} // namespace

Limits limits_from_env(const char* (*getenv)(const char*))
{
    if (!getenv)
        getenv = system_getenv;
    Limits l;
    l.trial_division_bound = env_value(getenv, "IDEM_TRIAL_BOUND", l.trial_division_bound);
    const auto rank = env_value(getenv, "IDEM_MAX_RANK", l.max_enumeration_rank);
    if (rank > 64)
        throw Error(Errc::BadParams, "IDEM_MAX_RANK must be at most 64");
    l.max_enumeration_rank = static_cast<unsigned>(rank);
    l.max_residue_enumeration = env_value(getenv, "IDEM_MAX_RESIDUES", l.max_residue_enumeration);
    l.max_graph_modulus = env_value(getenv, "IDEM_MAX_GRAPH", l.max_graph_modulus);
    l.max_orbit_length = env_value(getenv, "IDEM_MAX_ORBIT", l.max_orbit_length);
    return l;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Idempotents of Z/mZ: lattices, identities, power graphs and exponentiation", "idemtool"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();

    std::string modulus_text, b_text, e_text, id_text, range_text;
    std::string s_text, t_text;
    std::string label = "g";
    std::string strategy = "auto";
    std::string variant = "mod-m";
    bool dot = false;
    bool carmichael = false;
    BenchConfig bench_cfg;
    unsigned selftest_max_e = 40;

    const char* modulus_help = "modulus: decimal or factored form like 2^2*3";

    auto* idempotents = app.add_subcommand("idempotents", "list the 2^r idempotents of Z/mZ");
    idempotents->add_option("m", modulus_text, modulus_help)->required();

    ParamFlags identity_flags;
    auto* identity = app.add_subcommand("identity", "verify one identity of the catalog");
    identity->add_option("m", modulus_text, modulus_help)->required();
    identity->add_option("identity_id", id_text, "e.g. TOP_LEVEL_SUM or GEN_DUAL_SUM")->required();
    identity_flags.attach(identity);
    auto* identity_s = identity->add_option("--S", s_text, "sublattice top S (GEN_* only; default R)");
    auto* identity_t = identity->add_option("--T", t_text, "sublattice bottom T (GEN_* only; default {})");

    auto* lattice = app.add_subcommand("lattice", "the idempotent lattice as a divisor lattice");
    lattice->add_option("m", modulus_text, modulus_help)->required();
    lattice->add_flag("--dot", dot, "same as --format dot");
    lattice->add_option("--label", label, "DOT node labels: g_K or d_K")
        ->check(CLI::IsMember({"g", "d"}));

    ParamFlags sub_flags;
    auto* sublattice = app.add_subcommand("sublattice", "a consistent sublattice L(m, S, T)");
    sublattice->add_option("m", modulus_text, modulus_help)->required();
    sublattice->add_option("--S", s_text, "top index set S")->required();
    sublattice->add_option("--T", t_text, "bottom index set T")->required();
    auto* sub_identity = sublattice->add_option("--identity", id_text, "GEN_* identity to verify");
    sublattice->add_flag("--dot", dot, "same as --format dot");
    sublattice->add_option("--label", label, "DOT node labels: g_K or d_K")
        ->check(CLI::IsMember({"g", "d"}));
    sub_flags.attach(sublattice);

    auto* component = app.add_subcommand("component", "the power-graph component containing b");
    component->add_option("m", modulus_text, modulus_help)->required();
    component->add_option("b", b_text, "residue")->required();

    auto* orbit_cmd = app.add_subcommand("orbit", "tail and cycle of a, a^2, a^3, ...");
    orbit_cmd->add_option("m", modulus_text, modulus_help)->required();
    orbit_cmd->add_option("a", b_text, "residue")->required();

    auto* graph = app.add_subcommand("graph", "the sequential power graph of Z/mZ");
    graph->add_option("m", modulus_text, modulus_help)->required();
    graph->add_flag("--dot", dot, "same as --format dot");

    auto* modexp = app.add_subcommand("modexp", "b^e mod m through the idempotent decomposition");
    modexp->add_option("m", modulus_text, modulus_help)->required();
    modexp->add_option("b", b_text, "base")->required();
    modexp->add_option("e", e_text, "exponent")->required();
    modexp->add_option("--strategy", strategy, "formula to use")
        ->check(CLI::IsMember({"auto", "unit", "cycle", "general", "baseline"}))
        ->capture_default_str();
    modexp->add_flag("--carmichael", carmichael, "reduce exponents by the Carmichael function");
    modexp->add_option("--variant", variant, "per-prime powers mod m or mod p^e")
        ->check(CLI::IsMember({"mod-m", "per-prime"}))
        ->capture_default_str();

    auto* bench = app.add_subcommand("bench", "time the dispatcher against square-and-multiply");
    bench->add_option("m", modulus_text, modulus_help)->required();
    bench->add_option("--samples", bench_cfg.samples, "number of (b, e) samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--bits", bench_cfg.exponent_bits, "exponent size in bits")
        ->check(CLI::Range(1u, 4096u))
        ->capture_default_str();
    bench->add_option("--seed", bench_cfg.seed, "sampling seed")->capture_default_str();
    bench->add_option("--variant", variant, "per-prime powers mod m or mod p^e")
        ->check(CLI::IsMember({"mod-m", "per-prime"}))
        ->capture_default_str();
    bench->add_flag("--carmichael", carmichael, "reduce exponents by the Carmichael function");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant suite over a range of moduli");
    selftest_cmd->add_option("range", range_text, "moduli, e.g. 2..500 or 30")->required();
    selftest_cmd->add_option("--max-exponent", selftest_max_e, "largest exponent checked")
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
        reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : UsageError;
    }

    try {
        Context ctx{out, err, limits_from_env(),
                    format == "json" ? Format::Json : format == "dot" ? Format::Dot : Format::Text};
        if (dot)
            ctx.format = Format::Dot;
        const TotientKind kind = carmichael ? TotientKind::Carmichael : TotientKind::Euler;
        const PowerReduction reduction = variant == "per-prime" ? PowerReduction::PerPrimeCrt
                                                                : PowerReduction::ModM;

        if (selftest_cmd->parsed()) {
            require_format(ctx, {Format::Text, Format::Json}, "selftest");
            const auto range = parse_range(range_text);
            if (!range)
                throw Error(Errc::ParseError, "bad range '" + range_text + "'; use e.g. 2..500");
            return selftest({range->first, range->second, selftest_max_e, ctx.limits},
                            ctx.format == Format::Json, out);
        }

        const FactoredModulus m = parse_modulus(modulus_text, ctx.limits);
        const auto lattice_label = label == "d" ? LatticeLabel::D : LatticeLabel::G;

        if (idempotents->parsed())
            return run_idempotents(ctx, m);
        if (identity->parsed()) {
            std::optional<IndexSet> S, T;
            if (identity_s->count())
                S = parse_index_set(s_text);
            if (identity_t->count())
                T = parse_index_set(t_text);
            return run_identity(ctx, m, parse_identity_id(id_text), identity_flags, S, T);
        }
        if (lattice->parsed())
            return run_lattice(ctx, full_lattice(m), lattice_label);
        if (sublattice->parsed()) {
            const auto S = parse_index_set(s_text);
            const auto T = parse_index_set(t_text);
            if (sub_identity->count()) {
                const auto id = parse_identity_id(id_text);
                if (!is_general(id))
                    throw Error(Errc::BadParams, "sublattice --identity takes a GEN_* identity");
                return run_identity(ctx, m, id, sub_flags, S, T);
            }
            if (sub_flags.any() || sub_flags.all)
                throw Error(Errc::BadParams, "identity parameters need --identity");
            return run_lattice(ctx, consistent_lattice(m, S, T), lattice_label);
        }
        if (component->parsed())
            return run_component(ctx, m, parse_bigint(b_text));
        if (orbit_cmd->parsed())
            return run_orbit(ctx, m, parse_bigint(b_text));
        if (graph->parsed())
            return run_graph(ctx, m);
        if (modexp->parsed())
            return run_modexp(ctx, m, parse_bigint(b_text), parse_bigint(e_text), strategy, kind,
                              reduction);
        if (bench->parsed()) {
            bench_cfg.options = {.totient = kind, .reduction = reduction};
            return run_bench(ctx, m, bench_cfg);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const std::logic_error& e) {
        err << "internal check failed: " << e.what() << '\n';
        return VerificationFailed;
    }
    return UsageError;
}

} // namespace idemtool
