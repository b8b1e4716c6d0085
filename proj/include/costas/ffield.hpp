#pragma once

// Arithmetic in GF(q), q = p^r <= 2^20.
//
// Elements are identified with integers in [0, q): the coefficient vector
// (c_0, ..., c_{r-1}) of the polynomial residue is read as a base-p number with
// c_0 least significant. All orderings in the library ("smallest primitive
// element", witness tie-breaks) use this encoding.

#include "costas/numtheory.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace costas {

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

struct FieldElement {
    std::uint32_t value = 0;

    constexpr auto operator<=>(const FieldElement&) const = default;
};

class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// GF(p^r). `modulus` holds the r+1 coefficients of the monic reduction
/// polynomial, constant term first; empty for prime fields.
struct FieldSpec {
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;

    bool operator==(const FieldSpec&) const = default;
    bool is_prime_field() const { return r == 1; }
    bool contains(FieldElement a) const { return a.value < q; }
};

namespace detail {

using Poly = std::vector<std::uint32_t>;  // constant term first, over GF(p)

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    trim(out);
    return out;
}

/// a mod m for arbitrary nonzero m.
inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = mod_inverse(m.back(), p);
    while (a.size() > dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t c = a.back() * lead_inv % p;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
        trim(a);
    }
    return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly rem = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(rem);
    }
    return a;
}

/// base^e mod m.
inline Poly poly_pow_mod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) result = poly_mod(poly_mul(result, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

/// Monic f of degree r is irreducible iff gcd(f, x^{p^i} - x) = 1 for 1 <= i <= r/2.
/// The i = 1 step is exactly the root-absence check.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    Poly x_pow{0, 1};  // x^{p^i} mod f, starting at i = 0
    for (std::size_t i = 1; i <= deg / 2; ++i) {
        x_pow = poly_pow_mod(x_pow, p, f, p);
        Poly g = poly_gcd(f, poly_sub(x_pow, Poly{0, 1}, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace detail

/// Coefficient vector (length r) of an element.
inline std::vector<std::uint32_t> coefficients(FieldElement a, const FieldSpec& spec) {
    std::vector<std::uint32_t> c(spec.r, 0);
    std::uint32_t v = a.value;
    for (std::uint32_t i = 0; i < spec.r; ++i) {
        c[i] = v % spec.p;
        v /= spec.p;
    }
    return c;
}

inline FieldElement from_coefficients(const std::vector<std::uint32_t>& c, const FieldSpec& spec) {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= spec.p) throw FieldError("coefficient not reduced mod p");
        v = v * spec.p + c[i];
    }
    return FieldElement{v};
}

/// Prime field when r = 1; otherwise uses the lexicographically smallest monic
/// irreducible of degree r (coefficients below the leading one read as a base-p
/// integer, constant term least significant).
inline FieldSpec make_field(std::uint32_t p, std::uint32_t r = 1) {
    if (!is_prime(p)) throw FieldError("make_field: characteristic " + std::to_string(p) + " is not prime");
    if (r < 1) throw FieldError("make_field: degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) throw FieldError("make_field: field order exceeds 2^20");
    }
    if (q < 3) throw FieldError("make_field: field order must be >= 3");

    FieldSpec spec{p, r, static_cast<std::uint32_t>(q), {}};
    if (r == 1) return spec;

    for (std::uint64_t low = 0; low < q; ++low) {
        detail::Poly f(r + 1, 0);
        std::uint64_t v = low;
        for (std::uint32_t i = 0; i < r; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        f[r] = 1;
        if (detail::is_irreducible(f, p)) {
            spec.modulus = std::move(f);
            return spec;
        }
    }
    throw FieldError("make_field: no irreducible polynomial found");  // unreachable for valid input
}

/// Field from its order q (must be a prime power in [3, 2^20]).
inline FieldSpec make_field_of_order(std::uint64_t q) {
    auto [p, r] = prime_power_decomposition(q);
    if (p == 0) throw FieldError("field order " + std::to_string(q) + " is not a prime power");
    if (q > kMaxFieldOrder) throw FieldError("field order exceeds 2^20");
    return make_field(static_cast<std::uint32_t>(p), r);
}

inline void check_element(FieldElement a, const FieldSpec& spec) {
    if (!spec.contains(a))
        throw FieldError("element " + std::to_string(a.value) + " outside GF(" + std::to_string(spec.q) + ")");
}

inline FieldElement add(FieldElement a, FieldElement b, const FieldSpec& spec) {
    check_element(a, spec);
    check_element(b, spec);
    if (spec.r == 1) return FieldElement{(a.value + b.value) % spec.p};
    if (spec.p == 2) return FieldElement{a.value ^ b.value};
    std::uint32_t out = 0, scale = 1, x = a.value, y = b.value;
    for (std::uint32_t i = 0; i < spec.r; ++i) {
        out += ((x % spec.p + y % spec.p) % spec.p) * scale;
        x /= spec.p;
        y /= spec.p;
        scale *= spec.p;
    }
    return FieldElement{out};
}

inline FieldElement neg(FieldElement a, const FieldSpec& spec) {
    check_element(a, spec);
    if (spec.r == 1) return FieldElement{(spec.p - a.value) % spec.p};
    if (spec.p == 2) return a;
    std::uint32_t out = 0, scale = 1, x = a.value;
    for (std::uint32_t i = 0; i < spec.r; ++i) {
        out += ((spec.p - x % spec.p) % spec.p) * scale;
        x /= spec.p;
        scale *= spec.p;
    }
    return FieldElement{out};
}

inline FieldElement sub(FieldElement a, FieldElement b, const FieldSpec& spec) {
    return add(a, neg(b, spec), spec);
}

inline FieldElement mul(FieldElement a, FieldElement b, const FieldSpec& spec) {
    check_element(a, spec);
    check_element(b, spec);
    if (spec.r == 1) return FieldElement{static_cast<std::uint32_t>(std::uint64_t(a.value) * b.value % spec.p)};
    auto prod = detail::poly_mul(coefficients(a, spec), coefficients(b, spec), spec.p);
    auto red = detail::poly_mod(std::move(prod), spec.modulus, spec.p);
    red.resize(spec.r, 0);
    return from_coefficients(red, spec);
}

inline FieldElement pow(FieldElement a, std::uint64_t e, const FieldSpec& spec) {
    FieldElement result{1};
    while (e) {
        if (e & 1) result = mul(result, a, spec);
        a = mul(a, a, spec);
        e >>= 1;
    }
    return result;
}

/// a^{q-2}; inverse of zero is an error.
inline FieldElement inv(FieldElement a, const FieldSpec& spec) {
    check_element(a, spec);
    if (a.value == 0) throw FieldError("inv: zero has no multiplicative inverse");
    return pow(a, spec.q - 2, spec);
}

inline bool is_primitive(FieldElement a, const FieldSpec& spec) {
    if (a.value == 0 || !spec.contains(a)) return false;
    const std::uint64_t order = spec.q - 1;
    for (auto [prime, mult] : factorize(order).factors) {
        (void)mult;
        if (pow(a, order / prime, spec).value == 1) return false;
    }
    return true;
}

/// All phi(q-1) primitive elements in increasing encoding order.
inline std::vector<FieldElement> primitive_elements(const FieldSpec& spec) {
    FieldElement g0{1};
    while (!is_primitive(g0, spec)) ++g0.value;
    const std::uint64_t order = spec.q - 1;
    std::vector<FieldElement> out;
    out.reserve(euler_phi(order));
    FieldElement power{1};
    for (std::uint64_t k = 1; k <= order; ++k) {
        power = mul(power, g0, spec);
        if (std::gcd(k, order) == 1) out.push_back(power);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline FieldElement smallest_primitive_element(const FieldSpec& spec) {
    FieldElement g{1};
    while (!is_primitive(g, spec)) ++g.value;
    return g;
}

/// exp[i] = base^i for 0 <= i < q-1, and its inverse map.
class LogTable {
public:
    static constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

    LogTable(const FieldSpec& spec, FieldElement base) : spec_(spec), base_(base) {
        check_element(base, spec);
        const std::uint32_t order = spec.q - 1;
        exp_.resize(order);
        log_.assign(spec.q, kNoLog);
        FieldElement x{1};
        for (std::uint32_t i = 0; i < order; ++i) {
            if (log_[x.value] != kNoLog)
                throw FieldError("build_log_table: base " + std::to_string(base.value) + " is not primitive");
            exp_[i] = x.value;
            log_[x.value] = i;
            x = costas::mul(x, base, spec);
        }
        if (x.value != 1) throw FieldError("build_log_table: base is not primitive");
    }

    /// Adopts a precomputed exp column after checking it is a bijection onto the
    /// nonzero elements starting 1, base, ...
    static std::optional<LogTable> from_exp(const FieldSpec& spec, FieldElement base, std::vector<std::uint32_t> exp) {
        if (exp.size() != spec.q - 1 || exp.empty() || exp[0] != 1) return std::nullopt;
        if (exp.size() > 1 && exp[1] != base.value) return std::nullopt;
        LogTable t;
        t.spec_ = spec;
        t.base_ = base;
        t.log_.assign(spec.q, kNoLog);
        for (std::uint32_t i = 0; i < exp.size(); ++i) {
            if (exp[i] == 0 || exp[i] >= spec.q || t.log_[exp[i]] != kNoLog) return std::nullopt;
            t.log_[exp[i]] = i;
        }
        t.exp_ = std::move(exp);
        return t;
    }

    const FieldSpec& spec() const { return spec_; }
    FieldElement base() const { return base_; }
    std::uint32_t order() const { return spec_.q - 1; }

    FieldElement exp(std::uint64_t i) const { return FieldElement{exp_[i % exp_.size()]}; }

    std::uint32_t log(FieldElement a) const {
        if (a.value == 0 || a.value >= spec_.q) throw FieldError("log: argument must be a nonzero field element");
        return log_[a.value];
    }

    /// Product through the tables; either factor may be zero.
    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.value == 0 || b.value == 0) return FieldElement{0};
        return FieldElement{exp_[(std::uint64_t(log_[a.value]) + log_[b.value]) % exp_.size()]};
    }

    FieldElement pow(FieldElement a, std::uint64_t e) const {
        if (a.value == 0) return FieldElement{e == 0 ? 1u : 0u};
        return FieldElement{exp_[std::uint64_t(log_[a.value]) * (e % exp_.size()) % exp_.size()]};
    }

    const std::vector<std::uint32_t>& exp_values() const { return exp_; }

    bool operator==(const LogTable& o) const { return spec_ == o.spec_ && base_ == o.base_ && exp_ == o.exp_; }

private:
    LogTable() = default;

    FieldSpec spec_;
    FieldElement base_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

inline LogTable build_log_table(const FieldSpec& spec, FieldElement base) { return LogTable(spec, base); }

// ---------------------------------------------------------------------------
// Log-table cache file.
//
// Little-endian u32 stream: magic "CSLT", version 1, p, r, modulus length,
// modulus coefficients, base, q-1, exp[0..q-2]. The key (p, r, modulus, base) is
// checked on load and the exp column is re-validated as a bijection.
// A table whose key matches but whose contents were tampered with so that it
// is still a bijection starting (1, base) is not detected.

namespace detail {

inline constexpr std::uint32_t kLogTableMagic = 0x544c5343;  // "CSLT"
inline constexpr std::uint32_t kLogTableVersion = 1;

inline void put_u32(std::ostream& os, std::uint32_t v) {
    std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                          static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(b.data(), 4);
}

inline bool get_u32(std::istream& is, std::uint32_t& v) {
    std::array<unsigned char, 4> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), 4)) return false;
    v = b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t(b[3]) << 24);
    return true;
}

}  // namespace detail

inline void write_log_table(std::ostream& os, const LogTable& table) {
    const auto& spec = table.spec();
    detail::put_u32(os, detail::kLogTableMagic);
    detail::put_u32(os, detail::kLogTableVersion);
    detail::put_u32(os, spec.p);
    detail::put_u32(os, spec.r);
    detail::put_u32(os, static_cast<std::uint32_t>(spec.modulus.size()));
    for (auto c : spec.modulus) detail::put_u32(os, c);
    detail::put_u32(os, table.base().value);
    detail::put_u32(os, table.order());
    for (auto e : table.exp_values()) detail::put_u32(os, e);
}

/// Reads a table written by write_log_table. Returns nullopt when the stream is
/// malformed or its key differs from (spec, base).
inline std::optional<LogTable> read_log_table(std::istream& is, const FieldSpec& spec, FieldElement base) {
    std::uint32_t magic, version, p, r, mlen;
    if (!detail::get_u32(is, magic) || magic != detail::kLogTableMagic) return std::nullopt;
    if (!detail::get_u32(is, version) || version != detail::kLogTableVersion) return std::nullopt;
    if (!detail::get_u32(is, p) || !detail::get_u32(is, r) || p != spec.p || r != spec.r) return std::nullopt;
    if (!detail::get_u32(is, mlen) || mlen != spec.modulus.size()) return std::nullopt;
    for (std::uint32_t i = 0; i < mlen; ++i) {
        std::uint32_t c;
        if (!detail::get_u32(is, c) || c != spec.modulus[i]) return std::nullopt;
    }
    std::uint32_t b, order;
    if (!detail::get_u32(is, b) || b != base.value) return std::nullopt;
    if (!detail::get_u32(is, order) || order != spec.q - 1) return std::nullopt;
    std::vector<std::uint32_t> exp(order);
    for (auto& e : exp)
        if (!detail::get_u32(is, e)) return std::nullopt;
    return LogTable::from_exp(spec, base, std::move(exp));
}

inline std::string log_table_cache_name(const FieldSpec& spec, FieldElement base) {
    std::ostringstream name;
    name << "logtable_p" << spec.p << "_r" << spec.r << "_m";
    for (auto c : spec.modulus) name << c << '.';
    name << "_b" << base.value << ".bin";
    return name.str();
}

/// Write-through cache: loads the table for (spec, base) from `dir` if present
/// and valid, otherwise builds it and stores it. An empty `dir` disables caching.
inline LogTable cached_log_table(const FieldSpec& spec, FieldElement base, const std::filesystem::path& dir) {
    if (dir.empty()) return LogTable(spec, base);
    const auto path = dir / log_table_cache_name(spec, base);
    if (std::ifstream in{path, std::ios::binary}) {
        if (auto table = read_log_table(in, spec, base)) return std::move(*table);
    }
    LogTable table(spec, base);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!ec) {
        std::ofstream out{path, std::ios::binary | std::ios::trunc};
        if (out) write_log_table(out, table);
    }
    return table;
}

}  // namespace costas
