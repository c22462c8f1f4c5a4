#include "idem/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "idem/idempotent.hpp"

namespace idem {

namespace {

BigInt random_bits(std::mt19937_64& rng, unsigned bits)
{
    BigInt x = 0;
    for (unsigned done = 0; done < bits; done += 64) {
        x <<= 64;
        x += BigInt(static_cast<unsigned long>(rng()));
    }
    if (bits % 64 != 0)
        x >>= 64 - bits % 64;
    return x;
}

BigInt random_below(std::mt19937_64& rng, const BigInt& n)
{
    const auto bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    return random_bits(rng, bits + 64) % n;
}

TimingStats summarize(std::vector<double> ns)
{
    TimingStats s;
    s.count = ns.size();
    if (ns.empty())
        return s;
    auto quantile = [&](double q) {
        auto k = static_cast<std::size_t>(q * static_cast<double>(ns.size() - 1) + 0.5);
        std::nth_element(ns.begin(), ns.begin() + static_cast<std::ptrdiff_t>(k), ns.end());
        return ns[k];
    };
    s.median_ns = quantile(0.5);
    s.p95_ns = quantile(0.95);
    return s;
}

struct Sample {
    BigInt base;
    BigInt exponent;
};

std::vector<Sample> draw_samples(const FactoredModulus& m, const BenchConfig& config)
{
    std::mt19937_64 rng(config.seed);
    const BigInt& n = m.value();
    const auto r = m.rank();
    std::vector<Sample> out;
    out.reserve(config.samples);

    auto random_coprime = [&](const BigInt& to) {
        for (int attempt = 0; attempt < 256; ++attempt) {
            BigInt x = random_below(rng, n);
            if (gcd(x, to) == 1)
                return x;
        }
        return BigInt(1);
    };

    for (std::size_t k = 0; k < config.samples; ++k) {
        Sample s;
        const IndexSet set(r >= 64 ? rng() : rng() & ((std::uint64_t{1} << r) - 1));
        switch (k % 3) {
        case 0:
            s.base = random_below(rng, n);
            break;
        case 1: {
            BigInt pi = 1;
            for (unsigned i : set.members())
                pi *= m.prime(i);
            s.base = pi * random_coprime(n / g_of(m, set)) % n;
            break;
        }
        default:
            s.base = idempotent_from_set(m, set).value() * random_coprime(n) % n;
            break;
        }
        if (rng() % 8 == 0)
            s.exponent = BigInt(static_cast<unsigned long>(rng() % m.max_exponent()));
        else
            s.exponent = random_bits(rng, config.exponent_bits);
        out.push_back(std::move(s));
    }
    return out;
}

/// Square-and-multiply in machine words for an exponent of any size, so the
/// baseline runs at the same arithmetic width as the engine's word path.
std::uint64_t pow_mod_word(std::uint64_t b, const BigInt& e, std::uint64_t n)
{
    std::uint64_t r = 1 % n;
    b %= n;
    for (auto bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        r = mul_mod(r, r, n);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
            r = mul_mod(r, b, n);
    }
    return r;
}

} // namespace

BenchReport bench_compare(const FactoredModulus& m, const BenchConfig& config)
{
    using clock = std::chrono::steady_clock;
    BenchReport report{m, config, {}, {}, {}, {}, {}, 0};
    const ExpEngine engine(m, config.options);
    const auto samples = draw_samples(m, config);

    std::map<Strategy, std::vector<double>> dispatch_ns;
    std::map<Strategy, std::vector<double>> baseline_ns;
    std::vector<double> dispatch_all;
    std::vector<double> baseline_all;

    // With a word-size modulus both sides use 64-bit arithmetic; otherwise both use GMP.
    const bool words = m.fits_word() && !config.options.force_bigint;
    const std::uint64_t n = m.word();

    for (const auto& s : samples) {
        ExpEngine::Evaluation fast;
        BigInt slow;
        clock::time_point t0, t1, t2;
        if (words && s.exponent.fits_ulong_p()) {
            const std::uint64_t b = s.base.get_ui();
            const std::uint64_t e = s.exponent.get_ui();
            t0 = clock::now();
            const auto w = engine.evaluate(b, e);
            t1 = clock::now();
            const std::uint64_t v = pow_mod(b, e, n);
            t2 = clock::now();
            fast = {BigInt(w.value), w.strategy};
            slow = BigInt(v);
        } else if (words) {
            const std::uint64_t b = s.base.get_ui();
            t0 = clock::now();
            fast = engine.evaluate(s.base, s.exponent);
            t1 = clock::now();
            const std::uint64_t v = pow_mod_word(b, s.exponent, n);
            t2 = clock::now();
            slow = BigInt(v);
        } else {
            t0 = clock::now();
            fast = engine.evaluate(s.base, s.exponent);
            t1 = clock::now();
            slow = pow_mod(s.base, s.exponent, m.value());
            t2 = clock::now();
        }

        const double a = std::chrono::duration<double, std::nano>(t1 - t0).count();
        const double b = std::chrono::duration<double, std::nano>(t2 - t1).count();
        ++report.histogram[fast.strategy];
        dispatch_ns[fast.strategy].push_back(a);
        baseline_ns[fast.strategy].push_back(b);
        dispatch_all.push_back(a);
        baseline_all.push_back(b);
        if (fast.value != slow)
            ++report.mismatches;
    }
    for (auto& [strategy, ns] : dispatch_ns)
        report.dispatcher[strategy] = summarize(std::move(ns));
    for (auto& [strategy, ns] : baseline_ns)
        report.baseline[strategy] = summarize(std::move(ns));
    report.dispatcher_overall = summarize(std::move(dispatch_all));
    report.baseline_overall = summarize(std::move(baseline_all));
    return report;
}

} // namespace idem
