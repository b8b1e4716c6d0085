#pragma once

// Welch and Golomb Costas permutations, their families, and the Costas check.
// The public contract is 1-based: a permutation of {1, ..., n} is read with at(i).

#include "costas/ffield.hpp"
#include "costas/numtheory.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace costas {

struct WelchOrigin {
    std::uint32_t p = 0;
    std::uint32_t g = 0;
    std::uint32_t shift = 0;

    bool operator==(const WelchOrigin&) const = default;
};

struct GolombOrigin {
    std::uint32_t q = 0;
    std::uint32_t g1 = 0;  // canonical field encodings
    std::uint32_t g2 = 0;

    bool operator==(const GolombOrigin&) const = default;
};

/// A permutation supplied from outside (e.g. read from a file without a known construction).
struct ExternalOrigin {
    bool operator==(const ExternalOrigin&) const = default;
};

using Provenance = std::variant<ExternalOrigin, WelchOrigin, GolombOrigin>;

/// Total order on provenances, used for deterministic witness selection.
inline std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t> provenance_key(const Provenance& prov) {
    struct Visitor {
        auto operator()(const ExternalOrigin&) const { return std::tuple{0, 0u, 0u, 0u}; }
        auto operator()(const WelchOrigin& w) const { return std::tuple{1, w.p, w.g, w.shift}; }
        auto operator()(const GolombOrigin& g) const { return std::tuple{2, g.q, g.g1, g.g2}; }
    };
    return std::visit(Visitor{}, prov);
}

inline std::string to_string(const Provenance& prov) {
    struct Visitor {
        std::string operator()(const ExternalOrigin&) const { return "external"; }
        std::string operator()(const WelchOrigin& w) const {
            return "welch p=" + std::to_string(w.p) + " g=" + std::to_string(w.g) + " shift=" + std::to_string(w.shift);
        }
        std::string operator()(const GolombOrigin& g) const {
            return "golomb q=" + std::to_string(g.q) + " g1=" + std::to_string(g.g1) + " g2=" + std::to_string(g.g2);
        }
    };
    return std::visit(Visitor{}, prov);
}

class PermutationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws PermutationError unless `values` is a permutation of {1, ..., n}.
inline void require_permutation(std::span<const std::uint32_t> values) {
    std::vector<bool> seen(values.size() + 1, false);
    for (auto v : values) {
        if (v < 1 || v > values.size() || seen[v])
            throw PermutationError("not a permutation of {1.." + std::to_string(values.size()) + "}");
        seen[v] = true;
    }
}

class CostasPermutation {
public:
    explicit CostasPermutation(std::vector<std::uint32_t> values, Provenance provenance = ExternalOrigin{})
        : values_(std::move(values)), provenance_(provenance) {
        require_permutation(values_);
    }

    std::size_t n() const { return values_.size(); }

    /// pi(i) for 1 <= i <= n.
    std::uint32_t at(std::size_t i) const {
        if (i < 1 || i > values_.size()) throw std::out_of_range("permutation index out of range");
        return values_[i - 1];
    }

    /// Dense storage: values()[i-1] = pi(i).
    std::span<const std::uint32_t> values() const { return values_; }
    const Provenance& provenance() const { return provenance_; }

    bool same_sequence(const CostasPermutation& o) const { return values_ == o.values_; }
    bool operator==(const CostasPermutation&) const = default;

private:
    std::vector<std::uint32_t> values_;
    Provenance provenance_;
};

/// For every 1 <= k <= n-2 the differences pi(i+k) - pi(i) are pairwise distinct.
/// Non-permutations raise PermutationError rather than returning false.
inline bool is_costas(std::span<const std::uint32_t> values) {
    require_permutation(values);
    const std::size_t n = values.size();
    if (n < 3) return true;
    // stamp[d + n - 1] == k marks difference d as already seen in row k.
    std::vector<std::uint32_t> stamp(2 * n - 1, 0);
    for (std::size_t k = 1; k + 2 <= n; ++k) {
        for (std::size_t i = 0; i + k < n; ++i) {
            auto slot = static_cast<std::size_t>(
                static_cast<std::int64_t>(values[i + k]) - static_cast<std::int64_t>(values[i]) +
                static_cast<std::int64_t>(n) - 1);
            if (stamp[slot] == k) return false;
            stamp[slot] = static_cast<std::uint32_t>(k);
        }
    }
    return true;
}

inline bool is_costas(const CostasPermutation& perm) { return is_costas(perm.values()); }

// ---------------------------------------------------------------------------
// Welch

inline void require_welch_prime(std::uint32_t p) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("welch: p must be a prime >= 5, got " + std::to_string(p));
}

/// pi(i) = g^{i + shift} mod p on {1, ..., p-1}.
inline CostasPermutation welch(std::uint32_t p, std::uint32_t g, std::int64_t shift = 0) {
    require_welch_prime(p);
    const FieldSpec field = make_field(p);
    if (!is_primitive(FieldElement{g}, field))
        throw std::invalid_argument("welch: " + std::to_string(g) + " is not a primitive root mod " + std::to_string(p));
    const std::int64_t n = p - 1;
    const auto c = static_cast<std::uint32_t>(((shift % n) + n) % n);
    std::vector<std::uint32_t> values(p - 1);
    std::uint64_t x = mod_pow(g, c + 1, p);
    for (auto& v : values) {
        v = static_cast<std::uint32_t>(x);
        x = x * g % p;
    }
    return CostasPermutation(std::move(values), WelchOrigin{p, g, c});
}

/// One unshifted member per primitive root, ordered by g.
inline std::vector<CostasPermutation> welch_family(std::uint32_t p) {
    require_welch_prime(p);
    std::vector<CostasPermutation> family;
    for (auto g : primitive_elements(make_field(p))) family.push_back(welch(p, g.value, 0));
    return family;
}

// ---------------------------------------------------------------------------
// Golomb

inline void require_golomb_field(const FieldSpec& spec) {
    if (spec.q < 4) throw std::invalid_argument("golomb: field order must be >= 4, got " + std::to_string(spec.q));
}

/// pi(i) = h iff g1^i + g2^h = 1, for 1 <= i <= q-2. `table` may use any primitive base.
inline CostasPermutation golomb(const LogTable& table, FieldElement g1, FieldElement g2) {
    const FieldSpec& spec = table.spec();
    require_golomb_field(spec);
    if (!is_primitive(g1, spec)) throw std::invalid_argument("golomb: g1=" + std::to_string(g1.value) + " is not primitive");
    if (!is_primitive(g2, spec)) throw std::invalid_argument("golomb: g2=" + std::to_string(g2.value) + " is not primitive");

    const std::uint64_t order = table.order();
    const std::uint64_t log_g1 = table.log(g1);
    // log_{g2}(y) = log_b(y) / log_b(g2) mod (q-1)
    const std::uint64_t inv_log_g2 = mod_inverse(table.log(g2), order);
    const FieldElement one{1};

    std::vector<std::uint32_t> values(spec.q - 2);
    for (std::uint64_t i = 1; i <= values.size(); ++i) {
        FieldElement y = sub(one, table.exp(log_g1 * i % order), spec);
        values[i - 1] = static_cast<std::uint32_t>(table.log(y) * inv_log_g2 % order);
    }
    return CostasPermutation(std::move(values), GolombOrigin{spec.q, g1.value, g2.value});
}

inline CostasPermutation golomb(const FieldSpec& spec, FieldElement g1, FieldElement g2) {
    require_golomb_field(spec);
    return golomb(LogTable(spec, smallest_primitive_element(spec)), g1, g2);
}

/// G_q: {pi_{g1, g2} : g1 primitive} for a fixed g2, ordered by g1.
inline std::vector<CostasPermutation> golomb_subfamily(const LogTable& table, FieldElement g2) {
    require_golomb_field(table.spec());
    std::vector<CostasPermutation> family;
    for (auto g1 : primitive_elements(table.spec())) family.push_back(golomb(table, g1, g2));
    return family;
}

/// Default g2 is the primitive element with the smallest encoding.
inline std::vector<CostasPermutation> golomb_subfamily(const FieldSpec& spec, std::optional<FieldElement> g2 = {}) {
    require_golomb_field(spec);
    const FieldElement base = smallest_primitive_element(spec);
    return golomb_subfamily(LogTable(spec, base), g2.value_or(base));
}

/// L_q: all phi(q-1)^2 pairs, ordered by (g1, g2).
inline std::vector<CostasPermutation> golomb_full_family(const LogTable& table) {
    require_golomb_field(table.spec());
    const auto prims = primitive_elements(table.spec());
    std::vector<CostasPermutation> family;
    family.reserve(prims.size() * prims.size());
    for (auto g1 : prims)
        for (auto g2 : prims) family.push_back(golomb(table, g1, g2));
    return family;
}

inline std::vector<CostasPermutation> golomb_full_family(const FieldSpec& spec) {
    require_golomb_field(spec);
    return golomb_full_family(LogTable(spec, smallest_primitive_element(spec)));
}

/// Recomputes a Welch/Golomb permutation from its provenance and compares.
/// External permutations always match.
inline bool matches_provenance(const CostasPermutation& perm) {
    if (auto* w = std::get_if<WelchOrigin>(&perm.provenance()))
        return welch(w->p, w->g, w->shift).same_sequence(perm);
    if (auto* g = std::get_if<GolombOrigin>(&perm.provenance()))
        return golomb(make_field_of_order(g->q), FieldElement{g->g1}, FieldElement{g->g2}).same_sequence(perm);
    return true;
}

// ---------------------------------------------------------------------------
// Text form: a provenance header line, then pi(1) ... pi(n) space-separated.
//
//   # welch p=5 g=2 shift=0
//   2 4 3 1

inline void write_permutation(std::ostream& os, const CostasPermutation& perm) {
    os << "# " << to_string(perm.provenance()) << '\n';
    for (std::size_t i = 0; i < perm.n(); ++i) os << (i ? " " : "") << perm.values()[i];
    os << '\n';
}

inline std::string format_permutation(const CostasPermutation& perm) {
    std::ostringstream os;
    write_permutation(os, perm);
    return os.str();
}

namespace detail {

inline std::uint32_t header_field(const std::string& header, const std::string& key) {
    const std::string tag = " " + key + "=";
    auto pos = header.find(tag);
    if (pos == std::string::npos) throw std::invalid_argument("permutation header lacks '" + key + "'");
    try {
        return static_cast<std::uint32_t>(std::stoul(header.substr(pos + tag.size())));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("permutation header has a malformed '" + key + "'");
    }
}

}  // namespace detail

/// Parses one permutation in text form. A missing header means ExternalOrigin.
inline CostasPermutation read_permutation(std::istream& is) {
    std::string line, header;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line.front() == '#') {
            header = line;
            continue;
        }
        break;
    }
    if (line.empty() || line.front() == '#') throw std::invalid_argument("no permutation values found");

    std::vector<std::uint32_t> values;
    std::istringstream row(line);
    long long v;
    while (row >> v) {
        if (v < 1) throw PermutationError("permutation values must be positive");
        values.push_back(static_cast<std::uint32_t>(v));
    }
    if (!row.eof()) throw std::invalid_argument("non-numeric token in permutation values");

    Provenance prov = ExternalOrigin{};
    if (header.find("# welch") == 0)
        prov = WelchOrigin{detail::header_field(header, "p"), detail::header_field(header, "g"),
                           detail::header_field(header, "shift")};
    else if (header.find("# golomb") == 0)
        prov = GolombOrigin{detail::header_field(header, "q"), detail::header_field(header, "g1"),
                            detail::header_field(header, "g2")};
    return CostasPermutation(std::move(values), prov);
}

inline CostasPermutation parse_permutation(const std::string& text) {
    std::istringstream is(text);
    return read_permutation(is);
}

}  // namespace costas
