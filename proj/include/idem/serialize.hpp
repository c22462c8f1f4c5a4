#pragma once

#include "json.hpp"

#include "idem/bench.hpp"
#include "idem/identities.hpp"
#include "idem/idempotent.hpp"
#include "idem/lattice.hpp"
#include "idem/modexp.hpp"
#include "idem/power_graph.hpp"

namespace idem {

using Json = nlohmann::json;

// Every big integer is written as a decimal string. The *_from_json readers
// validate what they read and throw ParseError on malformed documents.

Json to_json(const FactoredModulus& m);
FactoredModulus factored_modulus_from_json(const Json& j);

Json to_json(IndexSet s);
IndexSet index_set_from_json(const Json& j);

Json to_json(const Idempotent& d);
/// Rebuilds d_I over `m` and checks the recorded d and g against it.
Idempotent idempotent_from_json(const Json& j, const FactoredModulus& m);

Json to_json(const IdentityParams& p);
IdentityParams identity_params_from_json(const Json& j);

Json to_json(const IdentityReport& r);
IdentityReport identity_report_from_json(const Json& j);

Json to_json(const ConsistentLattice& lattice, const Limits& limits = default_limits);

Json to_json(const ComponentDescriptor& c);
Json to_json(const OrbitDecomposition& o, const FactoredModulus& m);
/// Adjacency-list form: "adjacency"[v] lists the successors of v.
Json to_json(const PowerGraph& g);

Json to_json(const ExpResult& r);
Json to_json(const BenchReport& r);

} // namespace idem
