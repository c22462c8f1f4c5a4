#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "idem/arithmetic.hpp"
#include "idem/index_set.hpp"

namespace idem {

enum class Strategy { Unit, Cycle, General, Fallback };
enum class TotientKind { Euler, Carmichael };

/// How each per-prime power b^{e_i} is formed before weighting by d_i:
/// directly mod m, or mod p_i^{e_i} and then lifted by the idempotent.
enum class PowerReduction { ModM, PerPrimeCrt };

std::string_view to_string(Strategy s) noexcept;
std::string_view to_string(TotientKind k) noexcept;
std::string_view to_string(PowerReduction r) noexcept;

struct ReducedExponent {
    unsigned index;
    BigInt exponent;  // e mod totient(p_i^{e_i})

    friend bool operator==(const ReducedExponent&, const ReducedExponent&) = default;
};

struct ExpPlan {
    Strategy strategy = Strategy::Fallback;
    IndexSet active_indices;              // R \ T: the terms actually summed
    std::vector<ReducedExponent> reduced;  // one per active index, ascending
    TotientKind totient_kind = TotientKind::Euler;
};

struct ExpResult {
    BigInt value;
    ExpPlan plan;
};

struct ExpOptions {
    TotientKind totient = TotientKind::Euler;
    PowerReduction reduction = PowerReduction::ModM;
    /// Skip the 64-bit path even when m fits in a word.
    bool force_bigint = false;
};

/// Idempotent-weighted exponentiation over one fixed modulus:
///
///     b^e = sum_{i in R\T} d_i * b^{e mod lambda(p_i^{e_i})}  (mod m)
///
/// where d_i = d_{R\{i}} are the top-level idempotents and T is the index set
/// of b's power-graph component. The identity holds for units (T = {}), for
/// cycle elements (d_T b = b) with e >= 1, and for any b once e >= max e_i.
/// A zero reduced exponent contributes d_i itself.
///
/// The top-level idempotents and totients are computed once at construction.
class ExpEngine {
public:
    explicit ExpEngine(FactoredModulus m, ExpOptions options = {});

    const FactoredModulus& modulus() const noexcept { return m_; }
    const ExpOptions& options() const noexcept { return options_; }

    /// Throws NotAUnit unless gcd(u, m) = 1.
    BigInt unit(const BigInt& u, const BigInt& e) const;
    /// Throws NotCycleElement unless d_I b = b, ExponentTooSmall for e = 0.
    BigInt cycle(const BigInt& b, const BigInt& e) const;
    /// Throws ExponentTooSmall unless e >= max(e_1, ..., e_r).
    BigInt general(const BigInt& b, const BigInt& e) const;

    /// UNIT, then CYCLE, then GENERAL, else square-and-multiply. e = 0 gives 1.
    ExpResult run(const BigInt& b, const BigInt& e) const;

    struct Evaluation {
        BigInt value;
        Strategy strategy;
    };
    /// Same dispatch as run() without materializing the plan.
    Evaluation evaluate(const BigInt& b, const BigInt& e) const;

    struct WordEvaluation {
        std::uint64_t value;
        Strategy strategy;
    };
    /// Word-size dispatch; requires modulus().fits_word().
    WordEvaluation evaluate(std::uint64_t b, std::uint64_t e) const;

    /// One named formula in machine words, with the same precondition checks
    /// as unit(), cycle() and general(); FALLBACK is plain square-and-multiply.
    std::uint64_t formula(Strategy s, std::uint64_t b, std::uint64_t e) const;

    Strategy choose(const BigInt& b, const BigInt& e) const;

    /// {i : p_i | b}.
    IndexSet component_set(const BigInt& b) const;
    /// d_T b = b, tested as p_i^{e_i} | b for every i in T.
    bool is_cycle_element(const BigInt& b) const;

    const BigInt& top_level_idempotent(unsigned i) const { return terms_.at(i - 1).d; }
    const BigInt& totient(unsigned i) const { return terms_.at(i - 1).lambda; }

private:
    struct Term {
        BigInt d;       // d_{R\{i}}
        BigInt lambda;  // phi or Carmichael of p_i^{e_i}
        BigInt q;       // p_i^{e_i}
        std::uint64_t d_word = 0;
        std::uint64_t lambda_word = 0;
        std::uint64_t q_word = 0;
        std::uint64_t p_word = 0;  // 0 when p_i does not fit in a word
    };

    bool word_path() const noexcept { return m_.fits_word() && !options_.force_bigint; }
    IndexSet component_set_word(std::uint64_t b) const;
    bool is_cycle_word(std::uint64_t b, IndexSet t) const;
    Strategy choose_for(IndexSet t, bool cycle, bool e_zero, bool e_large) const;

    BigInt sum_big(const BigInt& b, const BigInt& e, IndexSet active) const;
    std::uint64_t sum_word(std::uint64_t b, const std::array<std::uint64_t, 64>& reduced,
                           IndexSet active) const;
    BigInt sum_dispatch(const BigInt& b, const BigInt& e, IndexSet active) const;
    std::uint64_t sum_word_exponent(std::uint64_t b, std::uint64_t e, IndexSet active) const;

    FactoredModulus m_;
    ExpOptions options_;
    std::vector<Term> terms_;
    IndexSet all_;
};

BigInt modexp_unit(const FactoredModulus& m, const BigInt& u, const BigInt& e,
                   TotientKind kind = TotientKind::Euler);
BigInt modexp_cycle(const FactoredModulus& m, const BigInt& b, const BigInt& e,
                    TotientKind kind = TotientKind::Euler);
BigInt modexp_general(const FactoredModulus& m, const BigInt& b, const BigInt& e,
                      TotientKind kind = TotientKind::Euler);
ExpResult modexp_auto(const FactoredModulus& m, const BigInt& b, const BigInt& e,
                      TotientKind kind = TotientKind::Euler);

} // namespace idem
