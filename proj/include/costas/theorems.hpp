#pragma once

// Predicted values of C(W_p) and C(G_q), their verification by exhaustive
// scans, and brute-force solution counts for the equations whose solution
// numbers bound the v = 0 and v != 0 parts of those maxima.

#include "costas/construction.hpp"
#include "costas/ffield.hpp"
#include "costas/numtheory.hpp"
#include "costas/xcorr.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace costas {

enum class TheoremId { Welch, Golomb, Conjecture };
enum class VerdictKind { Exact, UpperBound };

inline std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::Welch: return "theorem1";
        case TheoremId::Golomb: return "theorem2";
        case TheoremId::Conjecture: return "conjecture";
    }
    return "?";
}

inline std::string to_string(VerdictKind kind) { return kind == VerdictKind::Exact ? "exact" : "upper_bound"; }

struct TheoremVerdict {
    TheoremId theorem = TheoremId::Welch;
    std::uint32_t order = 0;         // p (Welch) or q (Golomb)
    std::optional<std::uint32_t> g2;  // fixed g2 of the scanned G_q
    bool shifted = false;             // Welch family with per-generator input shifts
    VerdictKind kind = VerdictKind::Exact;
    std::uint32_t t = 0;
    std::uint32_t predicted = 0;
    std::uint32_t computed = 0;
    bool pass = false;
    std::optional<FamilyScanResult> scan;

    bool operator==(const TheoremVerdict&) const = default;

    void settle(std::uint32_t value) {
        computed = value;
        pass = kind == VerdictKind::Exact ? computed == predicted : computed <= predicted;
    }
};

// ---------------------------------------------------------------------------
// Predictions

/// t = smallest prime divisor of (p-1)/2. Safe primes get the square-root
/// bound, every other prime the exact value (p-1)/t.
inline TheoremVerdict theorem1_prediction(std::uint32_t p) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("theorem1: p must be a prime >= 5, got " + std::to_string(p));
    TheoremVerdict out;
    out.theorem = TheoremId::Welch;
    out.order = p;
    out.t = static_cast<std::uint32_t>(smallest_prime_divisor((p - 1) / 2));
    if (is_safe_prime(p)) {
        out.kind = VerdictKind::UpperBound;
        out.predicted = 1 + static_cast<std::uint32_t>(floor_scaled_sqrt(p - 3, p - 1, p));
    } else {
        out.kind = VerdictKind::Exact;
        out.predicted = (p - 1) / out.t;
    }
    return out;
}

/// t = smallest prime divisor of (q-1)/2 (q odd) or of q-1 (q even).
inline std::uint32_t golomb_t(std::uint32_t q) {
    if (q < 4) throw std::invalid_argument("golomb: q must be >= 4");
    return static_cast<std::uint32_t>(smallest_prime_divisor(q % 2 ? (q - 1) / 2 : q - 1));
}

/// True in the two bounded cases: q odd with t = (q-1)/2, q even with t = q-1.
inline bool golomb_degenerate_t(std::uint32_t q) {
    const auto t = golomb_t(q);
    return q % 2 ? t == (q - 1) / 2 : t == q - 1;
}

inline TheoremVerdict theorem2_prediction(const FieldSpec& spec) {
    const std::uint32_t q = spec.q;
    if (q < 4) throw std::invalid_argument("theorem2: q must be >= 4, got " + std::to_string(q));
    TheoremVerdict out;
    out.theorem = TheoremId::Golomb;
    out.order = q;
    out.t = golomb_t(q);
    if (q % 2 == 1 && out.t == (q - 1) / 2) {
        out.kind = VerdictKind::UpperBound;
        out.predicted = 1 + static_cast<std::uint32_t>(floor_scaled_sqrt(q - 3, q - 1, q));
    } else if (q % 2 == 0 && out.t == q - 1) {
        out.kind = VerdictKind::UpperBound;
        out.predicted = static_cast<std::uint32_t>(floor_scaled_one_plus_sqrt(q - 2, q - 1, q));
    } else {
        out.kind = VerdictKind::Exact;
        out.predicted = (q - 1) / out.t - 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification by exhaustive scan

inline TheoremVerdict verify_theorem1(std::uint32_t p, unsigned workers = 0) {
    auto verdict = theorem1_prediction(p);
    const auto family = welch_family(p);
    verdict.scan = family_max(family, workers);
    verdict.settle(verdict.scan->max_corr);
    return verdict;
}

/// W_p with pi_g(i) replaced by pi_g(i + c_g), c_g = rank of g among the
/// primitive roots (one shift per generator).
inline std::vector<CostasPermutation> shifted_welch_family(std::uint32_t p) {
    require_welch_prime(p);
    std::vector<CostasPermutation> family;
    std::int64_t rank = 0;
    for (auto g : primitive_elements(make_field(p))) family.push_back(welch(p, g.value, rank++));
    return family;
}

inline TheoremVerdict verify_theorem1_shifted(std::uint32_t p, unsigned workers = 0) {
    auto verdict = theorem1_prediction(p);
    verdict.shifted = true;
    const auto family = shifted_welch_family(p);
    verdict.scan = family_max(family, workers);
    verdict.settle(verdict.scan->max_corr);
    return verdict;
}

/// Scans G_q for the given g2; `table` may have any primitive base.
inline TheoremVerdict verify_theorem2(const LogTable& table, FieldElement g2, unsigned workers = 0) {
    auto verdict = theorem2_prediction(table.spec());
    verdict.g2 = g2.value;
    const auto family = golomb_subfamily(table, g2);
    verdict.scan = family_max(family, workers);
    verdict.settle(verdict.scan->max_corr);
    return verdict;
}

inline TheoremVerdict verify_theorem2(const FieldSpec& spec, std::optional<FieldElement> g2 = {}, unsigned workers = 0) {
    if (spec.q < 4) throw std::invalid_argument("theorem2: q must be >= 4, got " + std::to_string(spec.q));
    const auto base = smallest_primitive_element(spec);
    return verify_theorem2(LogTable(spec, base), g2.value_or(base), workers);
}

/// One verdict per primitive g2, in encoding order.
inline std::vector<TheoremVerdict> verify_theorem2_all_g2(const LogTable& table, unsigned workers = 0) {
    std::vector<TheoremVerdict> out;
    for (auto g2 : primitive_elements(table.spec())) out.push_back(verify_theorem2(table, g2, workers));
    return out;
}

inline constexpr std::uint32_t kConjectureDefaultMaxQ = 64;

/// Scans the full Golomb family L_q against the G_q prediction, read as an
/// upper bound. Orders above 64 require `allow_long_run`.
inline TheoremVerdict conjecture_scan(const LogTable& table, unsigned workers = 0, bool allow_long_run = false) {
    const auto& spec = table.spec();
    if (spec.q < 4) throw std::invalid_argument("conjecture: q must be >= 4, got " + std::to_string(spec.q));
    if (spec.q > kConjectureDefaultMaxQ && !allow_long_run)
        throw std::invalid_argument("conjecture: q=" + std::to_string(spec.q) +
                                    " exceeds 64; the full-family scan needs the long-run flag");
    auto verdict = theorem2_prediction(spec);
    verdict.theorem = TheoremId::Conjecture;
    verdict.kind = VerdictKind::UpperBound;
    const auto family = golomb_full_family(table);
    verdict.scan = family_max(family, workers);
    verdict.settle(verdict.scan->max_corr);
    return verdict;
}

inline TheoremVerdict conjecture_scan(const FieldSpec& spec, unsigned workers = 0, bool allow_long_run = false) {
    if (spec.q < 4) throw std::invalid_argument("conjecture: q must be >= 4, got " + std::to_string(spec.q));
    return conjecture_scan(LogTable(spec, smallest_primitive_element(spec)), workers, allow_long_run);
}

// ---------------------------------------------------------------------------
// Solution-count oracles

enum class LemmaId { WelchShift = 1, GolombZeroShift = 2, GolombShift = 3 };

struct LemmaCount {
    LemmaId lemma = LemmaId::WelchShift;
    std::uint32_t order = 0;  // p or q
    std::uint32_t a = 0;      // residue / field encoding
    std::uint32_t b = 0;      // lemma 3 only
    std::uint32_t v = 0;      // lemma 1 only
    std::uint32_t u = 0;      // lemma 2 only
    std::uint32_t g1 = 0;     // lemma 2 only
    std::uint32_t r = 0;
    std::uint32_t d = 0;      // gcd(r-1, q-1), lemma 2 only
    std::uint32_t count = 0;
    std::uint32_t bound = 0;
    bool pass = false;
    bool structure_ok = true;  // lemma 2: zero when d does not divide u, solutions in one residue class

    bool operator==(const LemmaCount&) const = default;
};

inline bool valid_exponent(std::uint64_t r, std::uint64_t group_order) {
    return r > 1 && r < group_order && std::gcd(r, group_order) == 1;
}

inline std::uint32_t lemma1_bound(std::uint32_t p) {
    return 1 + static_cast<std::uint32_t>(floor_scaled_sqrt(p - 3, p - 1, p));
}

/// #{x in 1..p-1 : a x^r = x + v (mod p)}.
inline LemmaCount lemma1_count(std::uint32_t p, std::uint32_t a, std::uint32_t v, std::uint32_t r) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("lemma1: p must be a prime >= 5");
    if (a % p == 0 || v % p == 0) throw std::invalid_argument("lemma1: requires a*v != 0 mod p");
    if (!valid_exponent(r, p - 1)) throw std::invalid_argument("lemma1: requires gcd(r, p-1) = 1 and 1 < r < p-1");
    LemmaCount out;
    out.lemma = LemmaId::WelchShift;
    out.order = p;
    out.a = a % p;
    out.v = v % p;
    out.r = r;
    for (std::uint64_t x = 1; x < p; ++x)
        if (out.a * mod_pow(x, r, p) % p == (x + out.v) % p) ++out.count;
    out.bound = lemma1_bound(p);
    out.pass = out.count <= out.bound;
    return out;
}

inline std::uint32_t lemma2_bound(std::uint32_t q) {
    return golomb_degenerate_t(q) ? 2 : (q - 1) / golomb_t(q) - 1;
}

/// #{x in 1..q-2-u : g1^x = g1^{(x+u) r}} in GF(q), plus the gcd structure of
/// the equivalent congruence (r-1) x = -u r (mod q-1).
inline LemmaCount lemma2_count(const FieldSpec& spec, FieldElement g1, std::uint32_t r, std::uint32_t u) {
    const std::uint32_t q = spec.q;
    if (q < 4) throw std::invalid_argument("lemma2: q must be >= 4");
    if (!is_primitive(g1, spec)) throw std::invalid_argument("lemma2: g1 must be primitive");
    if (!valid_exponent(r, q - 1)) throw std::invalid_argument("lemma2: requires gcd(r, q-1) = 1 and 1 < r < q-1");
    if (u < 1 || u + 3 > q) throw std::invalid_argument("lemma2: requires 1 <= u <= q-3");

    LemmaCount out;
    out.lemma = LemmaId::GolombZeroShift;
    out.order = q;
    out.g1 = g1.value;
    out.r = r;
    out.u = u;
    out.d = static_cast<std::uint32_t>(std::gcd<std::uint64_t>(r - 1, q - 1));

    const std::uint64_t m = (q - 1) / out.d;
    const std::uint64_t inv = mod_inverse(((r - 1) / out.d) % m, m);
    const bool divides = u % out.d == 0;
    // x = -inv * (u/d) * r (mod (q-1)/d)
    const std::uint64_t residue = divides ? (m - inv * ((u / out.d) % m) % m * (r % m) % m) % m : 0;

    for (std::uint64_t x = 1; x + 2 + u <= q; ++x) {
        if (pow(g1, x, spec) != pow(g1, (x + u) * r, spec)) continue;
        ++out.count;
        if (!divides || x % m != residue) out.structure_ok = false;
    }
    out.bound = lemma2_bound(q);
    out.pass = out.count <= out.bound;
    return out;
}

inline std::uint32_t lemma3_bound(std::uint32_t q) {
    return q % 2 ? 1 + static_cast<std::uint32_t>(floor_scaled_sqrt(q - 3, q - 1, q))
                 : static_cast<std::uint32_t>(floor_scaled_one_plus_sqrt(q - 2, q - 1, q));
}

namespace detail {

inline LemmaCount lemma3_count_with(const LogTable& table, FieldElement a, FieldElement b, std::uint32_t r) {
    const auto& spec = table.spec();
    const FieldElement one{1};
    LemmaCount out;
    out.lemma = LemmaId::GolombShift;
    out.order = spec.q;
    out.a = a.value;
    out.b = b.value;
    out.r = r;
    for (std::uint32_t y = 2; y < spec.q; ++y) {
        const FieldElement ye{y};
        const auto lhs = table.mul(b, table.pow(sub(one, ye, spec), r));
        const auto rhs = sub(one, table.mul(a, ye), spec);
        if (lhs == rhs) ++out.count;
    }
    out.bound = lemma3_bound(spec.q);
    out.pass = out.count <= out.bound;
    return out;
}

inline void require_lemma3_params(const FieldSpec& spec, FieldElement a, FieldElement b, std::uint32_t r) {
    if (spec.q < 4) throw std::invalid_argument("lemma3: q must be >= 4");
    check_element(a, spec);
    check_element(b, spec);
    if (a.value <= 1) throw std::invalid_argument("lemma3: requires a not in {0, 1}");
    if (b.value == 0) throw std::invalid_argument("lemma3: requires b != 0");
    if (!valid_exponent(r, spec.q - 1)) throw std::invalid_argument("lemma3: requires gcd(r, q-1) = 1 and 1 < r < q-1");
}

}  // namespace detail

/// #{y in GF(q)* \ {1} : b (1-y)^r = 1 - a y}.
inline LemmaCount lemma3_count(const FieldSpec& spec, FieldElement a, FieldElement b, std::uint32_t r) {
    detail::require_lemma3_params(spec, a, b, r);
    return detail::lemma3_count_with(LogTable(spec, smallest_primitive_element(spec)), a, b, r);
}

/// Summary of an exhaustive parameter sweep for one p or q.
struct LemmaSweep {
    LemmaId lemma = LemmaId::WelchShift;
    std::uint32_t order = 0;
    std::uint64_t instances = 0;
    std::uint32_t bound = 0;
    std::uint32_t max_count = 0;
    LemmaCount worst;             // first instance (in sweep order) attaining max_count
    std::uint64_t violations = 0;  // count > bound
    std::uint64_t structure_violations = 0;
    bool pass = false;

    bool operator==(const LemmaSweep&) const = default;
};

namespace detail {

/// Runs body(i) for i in [0, count) over `workers` threads (0 = hardware
/// concurrency). Each index is owned by one worker; bodies write to disjoint slots.
inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
}

/// Folds per-slot sweeps (already in sweep order) into one summary.
inline LemmaSweep merge_sweeps(LemmaId lemma, std::uint32_t order, std::uint32_t bound,
                               const std::vector<std::vector<LemmaCount>>& slots) {
    LemmaSweep out;
    out.lemma = lemma;
    out.order = order;
    out.bound = bound;
    bool have = false;
    for (const auto& slot : slots)
        for (const auto& c : slot) {
            ++out.instances;
            if (!c.pass) ++out.violations;
            if (!c.structure_ok) ++out.structure_violations;
            if (!have || c.count > out.max_count) {
                out.max_count = c.count;
                out.worst = c;
                have = true;
            }
        }
    out.pass = out.violations == 0 && out.structure_violations == 0;
    return out;
}

}  // namespace detail

/// All (a, v, r) with a v != 0 and r a valid exponent, for one prime p.
inline LemmaSweep lemma1_sweep(std::uint32_t p, unsigned workers = 0) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("lemma1: p must be a prime >= 5");
    std::vector<std::uint32_t> exponents;
    for (std::uint32_t r = 2; r + 1 < p; ++r)
        if (valid_exponent(r, p - 1)) exponents.push_back(r);
    std::vector<std::vector<LemmaCount>> slots(exponents.size());
    detail::parallel_for(exponents.size(), workers, [&](std::size_t i) {
        for (std::uint32_t a = 1; a < p; ++a)
            for (std::uint32_t v = 1; v < p; ++v) slots[i].push_back(lemma1_count(p, a, v, exponents[i]));
    });
    return detail::merge_sweeps(LemmaId::WelchShift, p, lemma1_bound(p), slots);
}

/// All valid (r, u) for g1 (default: smallest primitive element).
inline LemmaSweep lemma2_sweep(const FieldSpec& spec, std::optional<FieldElement> g1 = {}, unsigned workers = 0) {
    if (spec.q < 4) throw std::invalid_argument("lemma2: q must be >= 4");
    const auto gen = g1.value_or(smallest_primitive_element(spec));
    std::vector<std::uint32_t> exponents;
    for (std::uint32_t r = 2; r < spec.q - 1; ++r)
        if (valid_exponent(r, spec.q - 1)) exponents.push_back(r);
    std::vector<std::vector<LemmaCount>> slots(exponents.size());
    detail::parallel_for(exponents.size(), workers, [&](std::size_t i) {
        for (std::uint32_t u = 1; u + 3 <= spec.q; ++u) slots[i].push_back(lemma2_count(spec, gen, exponents[i], u));
    });
    return detail::merge_sweeps(LemmaId::GolombZeroShift, spec.q, lemma2_bound(spec.q), slots);
}

/// All a not in {0,1}, b != 0, valid r.
inline LemmaSweep lemma3_sweep(const FieldSpec& spec, unsigned workers = 0) {
    if (spec.q < 4) throw std::invalid_argument("lemma3: q must be >= 4");
    const LogTable table(spec, smallest_primitive_element(spec));
    std::vector<std::uint32_t> exponents;
    for (std::uint32_t r = 2; r < spec.q - 1; ++r)
        if (valid_exponent(r, spec.q - 1)) exponents.push_back(r);
    std::vector<std::vector<LemmaCount>> slots(exponents.size());
    detail::parallel_for(exponents.size(), workers, [&](std::size_t i) {
        for (std::uint32_t a = 2; a < spec.q; ++a)
            for (std::uint32_t b = 1; b < spec.q; ++b)
                slots[i].push_back(detail::lemma3_count_with(table, FieldElement{a}, FieldElement{b}, exponents[i]));
    });
    return detail::merge_sweeps(LemmaId::GolombShift, spec.q, lemma3_bound(spec.q), slots);
}

}  // namespace costas
