#pragma once

// Exact cross-correlation of permutations of {1..n}.
//
//   C_{f1,f2}(u, v) = #{ x : max(1, 1-u) <= x <= min(n, n-u), f1(x) + v = f2(x+u) }
//
// The table and scan engines work one shift u at a time: for fixed u every
// valid x contributes to exactly one v = f2(x+u) - f1(x), so a difference
// histogram yields the whole row C(u, .) in O(n).

#include "costas/construction.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace costas {

class CorrelationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_same_length(const CostasPermutation& f1, const CostasPermutation& f2) {
    if (f1.n() != f2.n())
        throw CorrelationError("permutations have different lengths (" + std::to_string(f1.n()) + " vs " +
                               std::to_string(f2.n()) + ")");
    if (f1.n() == 0) throw CorrelationError("empty permutation");
}

inline void require_shift_range(std::int64_t n, std::int64_t u, std::int64_t v) {
    if (u <= -n || u >= n) throw CorrelationError("u=" + std::to_string(u) + " outside [1-n, n-1]");
    if (v <= -n || v >= n) throw CorrelationError("v=" + std::to_string(v) + " outside [1-n, n-1]");
}

}  // namespace detail

/// Direct count from the definition, O(n).
inline std::uint32_t cross_correlation_at(const CostasPermutation& f1, const CostasPermutation& f2, std::int64_t u,
                                          std::int64_t v) {
    detail::require_same_length(f1, f2);
    const auto n = static_cast<std::int64_t>(f1.n());
    detail::require_shift_range(n, u, v);
    std::uint32_t count = 0;
    for (std::int64_t x = std::max<std::int64_t>(1, 1 - u); x <= std::min(n, n - u); ++x)
        if (static_cast<std::int64_t>(f1.at(x)) + v == static_cast<std::int64_t>(f2.at(x + u))) ++count;
    return count;
}

/// Full (2n-1) x (2n-1) grid for one ordered pair.
class CorrelationTable {
public:
    CorrelationTable(std::size_t n, Provenance first, Provenance second)
        : n_(n), first_(std::move(first)), second_(std::move(second)), grid_((2 * n - 1) * (2 * n - 1), 0) {}

    std::size_t n() const { return n_; }
    std::int64_t min_shift() const { return 1 - static_cast<std::int64_t>(n_); }
    std::int64_t max_shift() const { return static_cast<std::int64_t>(n_) - 1; }

    std::uint32_t at(std::int64_t u, std::int64_t v) const { return grid_[index(u, v)]; }
    std::uint32_t& at(std::int64_t u, std::int64_t v) { return grid_[index(u, v)]; }

    const Provenance& first() const { return first_; }
    const Provenance& second() const { return second_; }

    std::uint64_t total_mass() const { return std::accumulate(grid_.begin(), grid_.end(), std::uint64_t{0}); }

private:
    std::size_t index(std::int64_t u, std::int64_t v) const {
        detail::require_shift_range(static_cast<std::int64_t>(n_), u, v);
        const auto side = 2 * n_ - 1;
        return static_cast<std::size_t>(u - min_shift()) * side + static_cast<std::size_t>(v - min_shift());
    }

    std::size_t n_;
    Provenance first_, second_;
    std::vector<std::uint32_t> grid_;
};

inline CorrelationTable cross_correlation_table(const CostasPermutation& f1, const CostasPermutation& f2) {
    detail::require_same_length(f1, f2);
    const auto n = static_cast<std::int64_t>(f1.n());
    const auto a = f1.values();
    const auto b = f2.values();
    CorrelationTable table(f1.n(), f1.provenance(), f2.provenance());
    for (std::int64_t u = 1 - n; u <= n - 1; ++u) {
        const std::int64_t lo = std::max<std::int64_t>(0, -u), hi = std::min(n, n - u);  // 0-based x
        for (std::int64_t x = lo; x < hi; ++x)
            ++table.at(u, static_cast<std::int64_t>(b[x + u]) - static_cast<std::int64_t>(a[x]));
    }
    return table;
}

/// CSV: header row "u\v" followed by the v values, then one row per u.
inline void write_table_csv(std::ostream& os, const CorrelationTable& table) {
    os << "u\\v";
    for (auto v = table.min_shift(); v <= table.max_shift(); ++v) os << ',' << v;
    os << '\n';
    for (auto u = table.min_shift(); u <= table.max_shift(); ++u) {
        os << u;
        for (auto v = table.min_shift(); v <= table.max_shift(); ++v) os << ',' << table.at(u, v);
        os << '\n';
    }
}

struct ShiftWitness {
    std::uint32_t value = 0;
    std::int64_t u = 0;
    std::int64_t v = 0;

    bool operator==(const ShiftWitness&) const = default;
};

namespace detail {

/// Scans every (u, v) of the ordered pair (a, b) and returns the maximum
/// strictly above `floor`, with the least (u, v) attaining it; nullopt when
/// nothing exceeds `floor`. Rows whose overlap n-|u| cannot beat the running
/// best are skipped. `hist` must hold 2n-1 zeros and is left zeroed.
inline std::optional<ShiftWitness> scan_pair(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                             std::uint32_t floor, std::vector<std::uint32_t>& hist) {
    const auto n = static_cast<std::int64_t>(a.size());
    const std::uint32_t* pa = a.data();
    const std::uint32_t* pb = b.data();
    std::uint32_t* h = hist.data() + (n - 1);  // h[d] for d in [1-n, n-1]

    std::uint32_t best = floor;
    std::optional<ShiftWitness> found;
    for (std::int64_t u = 1 - n; u <= n - 1; ++u) {
        const std::int64_t overlap = n - (u < 0 ? -u : u);
        if (overlap <= static_cast<std::int64_t>(best)) continue;
        const std::int64_t lo = u < 0 ? -u : 0, hi = u < 0 ? n : n - u;
        for (std::int64_t x = lo; x < hi; ++x)
            ++h[static_cast<std::int64_t>(pb[x + u]) - static_cast<std::int64_t>(pa[x])];
        // Read and clear in one pass: the first x landing on a bin sees its full count.
        for (std::int64_t x = lo; x < hi; ++x) {
            const std::int64_t d = static_cast<std::int64_t>(pb[x + u]) - static_cast<std::int64_t>(pa[x]);
            const std::uint32_t c = h[d];
            h[d] = 0;
            if (c > best || (c == best && found && found->u == u && d < found->v)) {
                best = c;
                found = ShiftWitness{c, u, d};
            }
        }
    }
    return found;
}

}  // namespace detail

/// Maximum over all (u, v), including (0, 0); ties go to the smallest u, then v.
inline ShiftWitness pair_max(const CostasPermutation& f1, const CostasPermutation& f2) {
    detail::require_same_length(f1, f2);
    if (f1.same_sequence(f2)) throw CorrelationError("pair_max: the two permutations are identical");
    std::vector<std::uint32_t> hist(2 * f1.n() - 1, 0);
    // Every pair has a nonzero cell, so a floor of 0 always produces a witness.
    return *detail::scan_pair(f1.values(), f2.values(), 0, hist);
}

/// Which construction family a scanned list belongs to.
struct FamilyId {
    enum class Kind { Welch, GolombSub, GolombFull, Custom };
    Kind kind = Kind::Custom;
    std::uint32_t order = 0;  // p for Welch, q for Golomb
    std::uint32_t g2 = 0;     // fixed g2 of a Golomb subfamily

    bool operator==(const FamilyId&) const = default;
};

/// W_p, G_q (g2 = ...), L_q or "custom".
inline std::string to_string(const FamilyId& id) {
    switch (id.kind) {
        case FamilyId::Kind::Welch: return "W_" + std::to_string(id.order);
        case FamilyId::Kind::GolombSub: return "G_" + std::to_string(id.order);
        case FamilyId::Kind::GolombFull: return "L_" + std::to_string(id.order);
        case FamilyId::Kind::Custom: break;
    }
    return "custom";
}

/// Infers the family from the members' provenance.
inline FamilyId identify_family(std::span<const CostasPermutation> family) {
    if (family.empty()) return {};
    if (std::all_of(family.begin(), family.end(),
                    [](const auto& f) { return std::holds_alternative<WelchOrigin>(f.provenance()); })) {
        const auto p = std::get<WelchOrigin>(family.front().provenance()).p;
        if (std::all_of(family.begin(), family.end(),
                        [p](const auto& f) { return std::get<WelchOrigin>(f.provenance()).p == p; }))
            return {FamilyId::Kind::Welch, p, 0};
    }
    if (std::all_of(family.begin(), family.end(),
                    [](const auto& f) { return std::holds_alternative<GolombOrigin>(f.provenance()); })) {
        const auto first = std::get<GolombOrigin>(family.front().provenance());
        bool same_q = true, same_g2 = true;
        for (const auto& f : family) {
            const auto& g = std::get<GolombOrigin>(f.provenance());
            same_q &= g.q == first.q;
            same_g2 &= g.g2 == first.g2;
        }
        if (same_q) return same_g2 ? FamilyId{FamilyId::Kind::GolombSub, first.q, first.g2}
                                   : FamilyId{FamilyId::Kind::GolombFull, first.q, 0};
    }
    return {};
}

struct FamilyScanResult {
    FamilyId family;
    std::size_t family_size = 0;
    std::uint32_t max_corr = 0;
    Provenance f1, f2;
    std::int64_t u = 0, v = 0;
    std::size_t f1_index = 0, f2_index = 0;  // positions in the scanned list

    bool operator==(const FamilyScanResult&) const = default;
};

/// C(F): maximum of C_{f1,f2}(u, v) over distinct members and all shifts.
///
/// Unordered pairs are scanned once each; by C_{f1,f2}(u,v) = C_{f2,f1}(-u,-v)
/// the ordered pair with f1 first in provenance order covers both. The witness
/// is the least (pair, u, v) attaining the maximum, where pairs are compared by
/// the provenance order of (f1, f2), so it does not depend on the order of the
/// input list or on `workers` (0 = hardware concurrency).
inline FamilyScanResult family_max(std::span<const CostasPermutation> family, unsigned workers = 0) {
    if (family.size() < 2) throw CorrelationError("family_max: need at least two permutations");
    const std::size_t n = family.front().n();
    for (const auto& f : family)
        if (f.n() != n) throw CorrelationError("family_max: members have different lengths");

    std::vector<std::size_t> order(family.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return provenance_key(family[i].provenance()) < provenance_key(family[j].provenance());
    });

    struct Best {
        std::uint32_t value = 0;
        std::size_t a = 0, b = 0;  // ranks in `order`
        std::int64_t u = 0, v = 0;
        bool valid = false;
    };

    // Rows are handed out in increasing order, so each worker sees its pairs in
    // increasing (a, b) order and only a strictly larger value can displace its best.
    std::atomic<std::size_t> next_row{0};
    auto work = [&](Best& best) {
        std::vector<std::uint32_t> hist(2 * n - 1, 0);
        for (std::size_t a; (a = next_row.fetch_add(1)) + 1 < order.size();) {
            const auto& f1 = family[order[a]];
            for (std::size_t b = a + 1; b < order.size(); ++b) {
                const auto& f2 = family[order[b]];
                if (f1.same_sequence(f2)) continue;
                const std::uint32_t floor = best.valid ? best.value : 0;
                if (auto w = detail::scan_pair(f1.values(), f2.values(), floor, hist))
                    best = Best{w->value, a, b, w->u, w->v, true};
            }
        }
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, family.size() - 1));
    std::vector<Best> results(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, std::ref(results[w]));
        work(results[0]);
    }

    const Best* winner = nullptr;
    for (const auto& r : results) {
        if (!r.valid) continue;
        if (!winner || r.value > winner->value ||
            (r.value == winner->value &&
             std::tie(r.a, r.b, r.u, r.v) < std::tie(winner->a, winner->b, winner->u, winner->v)))
            winner = &r;
    }
    if (!winner) throw CorrelationError("family_max: family has no two distinct members");

    FamilyScanResult out;
    out.family = identify_family(family);
    out.family_size = family.size();
    out.max_corr = winner->value;
    out.f1_index = order[winner->a];
    out.f2_index = order[winner->b];
    out.f1 = family[out.f1_index].provenance();
    out.f2 = family[out.f2_index].provenance();
    out.u = winner->u;
    out.v = winner->v;
    return out;
}

}  // namespace costas
