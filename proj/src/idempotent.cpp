#include "idem/idempotent.hpp"

#include <stdexcept>

#include "idem/error.hpp"

namespace idem {

void require_same_modulus(const Idempotent& a, const Idempotent& b)
{
    if (!(a.modulus() == b.modulus()))
        throw Error(Errc::MixedModuli, "idempotents over " + a.modulus().value().get_str() +
                                           " and " + b.modulus().value().get_str());
}

void require_enumerable(const FactoredModulus& m, const Limits& limits)
{
    if (m.rank() > limits.max_enumeration_rank)
        throw Error(Errc::CapExceeded, "r = " + std::to_string(m.rank()) +
                                           " exceeds the enumeration cap " +
                                           std::to_string(limits.max_enumeration_rank));
}

BigInt g_of(const FactoredModulus& m, IndexSet set)
{
    if (!set.within(m.rank()))
        throw Error(Errc::IndexOutOfRange, to_string(set) + " is not a subset of {1.." +
                                               std::to_string(m.rank()) + "}");
    BigInt g = 1;
    for (unsigned i : set.members())
        g *= m.prime_power(i);
    return g;
}

Idempotent idempotent_from_set(const FactoredModulus& m, IndexSet set)
{
    BigInt g = g_of(m, set);
    std::vector<Congruence> system;
    system.reserve(m.rank());
    for (unsigned i = 1; i <= m.rank(); ++i)
        system.push_back({BigInt(set.contains(i) ? 0 : 1), m.prime_power(i)});
    BigInt d = crt_combine(system);
    return Idempotent(m, set, std::move(d), std::move(g));
}

std::vector<Idempotent> enumerate_idempotents(const FactoredModulus& m, const Limits& limits)
{
    require_enumerable(m, limits);
    std::vector<Idempotent> out;
    out.reserve(std::size_t{1} << m.rank());
    for_each_subset(IndexSet::full(m.rank()),
                    [&](IndexSet s) { out.push_back(idempotent_from_set(m, s)); });
    return out;
}

Idempotent complement(const Idempotent& d)
{
    const auto& m = d.modulus();
    return idempotent_from_set(m, IndexSet::full(m.rank()) - d.set());
}

Idempotent multiply(std::span<const Idempotent> ds)
{
    if (ds.empty())
        throw Error(Errc::BadParams, "multiply needs at least one idempotent");
    const auto& m = ds.front().modulus();
    IndexSet u;
    for (const auto& d : ds) {
        require_same_modulus(ds.front(), d);
        u = u | d.set();
    }
    return idempotent_from_set(m, u);
}

std::pair<Idempotent, Idempotent> add_decompose(const Idempotent& di, const Idempotent& dj)
{
    require_same_modulus(di, dj);
    const auto& m = di.modulus();
    auto join = idempotent_from_set(m, di.set() | dj.set());
    auto meet = idempotent_from_set(m, di.set() & dj.set());
    return {std::move(join), std::move(meet)};
}

BigInt subtract(const Idempotent& dj, const Idempotent& di)
{
    require_same_modulus(dj, di);
    const auto& m = di.modulus().value();
    BigInt direct = reduce(dj.value() - di.value(), m);
    BigInt via_complement = reduce(dj.value() + complement(di).value() - 1, m);
    if (direct != via_complement)
        throw std::logic_error("d_J - d_I disagrees with d_J + d_{R\\I} - 1");
    return direct;
}

} // namespace idem
