#include "idem/modexp.hpp"

#include "idem/error.hpp"
#include "idem/idempotent.hpp"

namespace idem {

std::string_view to_string(Strategy s) noexcept
{
    switch (s) {
    case Strategy::Unit: return "UNIT";
    case Strategy::Cycle: return "CYCLE";
    case Strategy::General: return "GENERAL";
    case Strategy::Fallback: return "FALLBACK";
    }
    return "UNKNOWN";
}

std::string_view to_string(TotientKind k) noexcept
{
    return k == TotientKind::Euler ? "EULER" : "CARMICHAEL";
}

std::string_view to_string(PowerReduction r) noexcept
{
    return r == PowerReduction::ModM ? "MOD_M" : "PER_PRIME_CRT";
}

ExpEngine::ExpEngine(FactoredModulus m, ExpOptions options)
    : m_(std::move(m)), options_(options), all_(IndexSet::full(m_.rank()))
{
    terms_.reserve(m_.rank());
    for (unsigned i = 1; i <= m_.rank(); ++i) {
        Term t;
        t.d = idempotent_from_set(m_, all_.without(i)).value();
        t.lambda = options_.totient == TotientKind::Euler
                       ? euler_phi_prime_power(m_.prime(i), m_.exponent(i))
                       : carmichael_prime_power(m_.prime(i), m_.exponent(i));
        t.q = m_.prime_power(i);
        if (m_.fits_word()) {
            t.d_word = t.d.get_ui();
            t.lambda_word = t.lambda.get_ui();
            t.q_word = t.q.get_ui();
            t.p_word = m_.prime(i).get_ui();
        }
        terms_.push_back(std::move(t));
    }
}

IndexSet ExpEngine::component_set_word(std::uint64_t b) const
{
    IndexSet t;
    for (unsigned i = 0; i < terms_.size(); ++i)
        if (b % terms_[i].p_word == 0)
            t = IndexSet(t.bits() | (std::uint64_t{1} << i));
    return t;
}

bool ExpEngine::is_cycle_word(std::uint64_t b, IndexSet t) const
{
    // d_T = 0 mod p_i^{e_i} for i in T and 1 elsewhere, so d_T b = b exactly
    // when every p_i^{e_i} with i in T divides b.
    for (unsigned i : t.members())
        if (b % terms_[i - 1].q_word != 0)
            return false;
    return true;
}

IndexSet ExpEngine::component_set(const BigInt& b) const
{
    const BigInt x = reduce(b, m_.value());
    if (m_.fits_word())
        return component_set_word(x.get_ui());
    IndexSet t;
    for (unsigned i = 1; i <= m_.rank(); ++i)
        if (mpz_divisible_p(x.get_mpz_t(), m_.prime(i).get_mpz_t()))
            t = t.with(i);
    return t;
}

bool ExpEngine::is_cycle_element(const BigInt& b) const
{
    const BigInt x = reduce(b, m_.value());
    const IndexSet t = component_set(x);
    for (unsigned i : t.members())
        if (!mpz_divisible_p(x.get_mpz_t(), terms_[i - 1].q.get_mpz_t()))
            return false;
    return true;
}

Strategy ExpEngine::choose_for(IndexSet t, bool cycle, bool e_zero, bool e_large) const
{
    if (e_zero)
        return Strategy::Fallback;
    if (t.empty())
        return Strategy::Unit;
    if (cycle)
        return Strategy::Cycle;
    if (e_large)
        return Strategy::General;
    return Strategy::Fallback;
}

Strategy ExpEngine::choose(const BigInt& b, const BigInt& e) const
{
    const BigInt x = reduce(b, m_.value());
    return choose_for(component_set(x), is_cycle_element(x), sgn(e) == 0, e >= m_.max_exponent());
}

BigInt ExpEngine::sum_big(const BigInt& b, const BigInt& e, IndexSet active) const
{
    const BigInt& m = m_.value();
    BigInt acc = 0;
    BigInt ei;
    for (unsigned i : active.members()) {
        const Term& t = terms_[i - 1];
        mpz_fdiv_r(ei.get_mpz_t(), e.get_mpz_t(), t.lambda.get_mpz_t());
        if (sgn(ei) == 0) {
            acc += t.d;
        } else if (options_.reduction == PowerReduction::ModM) {
            acc += t.d * pow_mod(b, ei, m);
        } else {
            acc += t.d * pow_mod(b % t.q, ei, t.q);
        }
    }
    return reduce(acc, m);
}

std::uint64_t ExpEngine::sum_word(std::uint64_t b, const std::array<std::uint64_t, 64>& reduced,
                                  IndexSet active) const
{
    const std::uint64_t m = m_.word();
    std::uint64_t acc = 0;
    for (std::uint64_t bits = active.bits(); bits != 0; bits &= bits - 1) {
        const auto i = static_cast<unsigned>(std::countr_zero(bits));
        const Term& t = terms_[i];
        std::uint64_t term;
        if (reduced[i] == 0)
            term = t.d_word;
        else if (options_.reduction == PowerReduction::ModM)
            term = mul_mod(t.d_word, pow_mod(b, reduced[i], m), m);
        else
            term = mul_mod(t.d_word, pow_mod(b % t.q_word, reduced[i], t.q_word), m);
        acc = acc >= m - term ? acc - (m - term) : acc + term;
    }
    return acc;
}

BigInt ExpEngine::sum_dispatch(const BigInt& b, const BigInt& e, IndexSet active) const
{
    if (!word_path())
        return sum_big(b, e, active);
    std::array<std::uint64_t, 64> reduced{};
    for (unsigned i : active.members())
        reduced[i - 1] = mpz_fdiv_ui(e.get_mpz_t(), terms_[i - 1].lambda_word);
    return BigInt(sum_word(b.get_ui(), reduced, active));
}

BigInt ExpEngine::unit(const BigInt& u, const BigInt& e) const
{
    if (sgn(e) < 0)
        throw Error(Errc::BadParams, "negative exponent");
    const BigInt x = reduce(u, m_.value());
    if (!component_set(x).empty())
        throw Error(Errc::NotAUnit, x.get_str() + " is not a unit modulo " + m_.value().get_str());
    return sum_dispatch(x, e, all_);
}

BigInt ExpEngine::cycle(const BigInt& b, const BigInt& e) const
{
    if (sgn(e) <= 0)
        throw Error(Errc::ExponentTooSmall, "the cycle formula needs e >= 1");
    const BigInt x = reduce(b, m_.value());
    if (!is_cycle_element(x))
        throw Error(Errc::NotCycleElement,
                    x.get_str() + " is not a cycle element modulo " + m_.value().get_str());
    return sum_dispatch(x, e, all_ - component_set(x));
}

BigInt ExpEngine::general(const BigInt& b, const BigInt& e) const
{
    if (e < m_.max_exponent())
        throw Error(Errc::ExponentTooSmall, "the general formula needs e >= " +
                                                std::to_string(m_.max_exponent()));
    const BigInt x = reduce(b, m_.value());
    return sum_dispatch(x, e, all_ - component_set(x));
}

ExpEngine::Evaluation ExpEngine::evaluate(const BigInt& b, const BigInt& e) const
{
    if (sgn(e) < 0)
        throw Error(Errc::BadParams, "negative exponent");
    const BigInt x = reduce(b, m_.value());
    const IndexSet t = component_set(x);
    const Strategy s = choose_for(t, is_cycle_element(x), sgn(e) == 0, e >= m_.max_exponent());
    if (s == Strategy::Fallback)
        return {sgn(e) == 0 ? BigInt(1) : pow_mod(x, e, m_.value()), s};
    return {sum_dispatch(x, e, all_ - t), s};
}

ExpEngine::WordEvaluation ExpEngine::evaluate(std::uint64_t b, std::uint64_t e) const
{
    if (!m_.fits_word())
        throw Error(Errc::BadParams, "modulus does not fit in a machine word");
    if (options_.force_bigint) {
        auto r = evaluate(BigInt(b), BigInt(e));
        return {r.value.get_ui(), r.strategy};
    }
    const std::uint64_t m = m_.word();
    b %= m;
    const IndexSet t = component_set_word(b);
    const Strategy s = choose_for(t, is_cycle_word(b, t), e == 0, e >= m_.max_exponent());
    if (s == Strategy::Fallback)
        return {e == 0 ? 1 : pow_mod(b, e, m), s};

    return {sum_word_exponent(b, e, all_ - t), s};
}

std::uint64_t ExpEngine::sum_word_exponent(std::uint64_t b, std::uint64_t e, IndexSet active) const
{
    std::array<std::uint64_t, 64> reduced{};
    for (std::uint64_t bits = active.bits(); bits != 0; bits &= bits - 1) {
        const auto i = static_cast<unsigned>(std::countr_zero(bits));
        reduced[i] = e % terms_[i].lambda_word;
    }
    return sum_word(b, reduced, active);
}

std::uint64_t ExpEngine::formula(Strategy s, std::uint64_t b, std::uint64_t e) const
{
    if (!m_.fits_word())
        throw Error(Errc::BadParams, "modulus does not fit in a machine word");
    const std::uint64_t m = m_.word();
    b %= m;
    const IndexSet t = component_set_word(b);
    switch (s) {
    case Strategy::Unit:
        if (!t.empty())
            throw Error(Errc::NotAUnit, std::to_string(b) + " is not a unit modulo " + std::to_string(m));
        return sum_word_exponent(b, e, all_);
    case Strategy::Cycle:
        if (e == 0)
            throw Error(Errc::ExponentTooSmall, "the cycle formula needs e >= 1");
        if (!is_cycle_word(b, t))
            throw Error(Errc::NotCycleElement,
                        std::to_string(b) + " is not a cycle element modulo " + std::to_string(m));
        return sum_word_exponent(b, e, all_ - t);
    case Strategy::General:
        if (e < m_.max_exponent())
            throw Error(Errc::ExponentTooSmall, "the general formula needs e >= " +
                                                    std::to_string(m_.max_exponent()));
        return sum_word_exponent(b, e, all_ - t);
    case Strategy::Fallback:
        break;
    }
    return pow_mod(b, e, m);
}

ExpResult ExpEngine::run(const BigInt& b, const BigInt& e) const
{
    auto [value, strategy] = evaluate(b, e);
    ExpPlan plan;
    plan.strategy = strategy;
    plan.totient_kind = options_.totient;
    if (strategy != Strategy::Fallback) {
        plan.active_indices = all_ - component_set(b);
        for (unsigned i : plan.active_indices.members()) {
            BigInt ei;
            mpz_fdiv_r(ei.get_mpz_t(), e.get_mpz_t(), terms_[i - 1].lambda.get_mpz_t());
            plan.reduced.push_back({i, std::move(ei)});
        }
    }
    return {std::move(value), std::move(plan)};
}

BigInt modexp_unit(const FactoredModulus& m, const BigInt& u, const BigInt& e, TotientKind kind)
{
    return ExpEngine(m, {.totient = kind}).unit(u, e);
}

BigInt modexp_cycle(const FactoredModulus& m, const BigInt& b, const BigInt& e, TotientKind kind)
{
    return ExpEngine(m, {.totient = kind}).cycle(b, e);
}

BigInt modexp_general(const FactoredModulus& m, const BigInt& b, const BigInt& e, TotientKind kind)
{
    return ExpEngine(m, {.totient = kind}).general(b, e);
}

ExpResult modexp_auto(const FactoredModulus& m, const BigInt& b, const BigInt& e, TotientKind kind)
{
    return ExpEngine(m, {.totient = kind}).run(b, e);
}

} // namespace idem
