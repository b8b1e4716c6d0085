#pragma once

// Exact integer number theory at desk scale (all moduli below 2^20).
// Everything here is trial division and integer comparison; no floating point.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace costas {

/// Prime factorization n = prod p_i^{e_i}, primes strictly increasing.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factors;

    bool operator==(const Factorization&) const = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.n = n;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) f.factors.emplace_back(d, e);
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    std::uint64_t phi = n;
    for (auto [prime, mult] : factorize(n).factors) {
        (void)mult;
        phi = phi / prime * (prime - 1);
    }
    return phi;
}

inline std::uint64_t smallest_prime_divisor(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("smallest_prime_divisor: n must be >= 2");
    return factorize(n).factors.front().first;
}

/// p safe <=> (p-1)/2 prime. Requires an odd prime.
inline bool is_safe_prime(std::uint64_t p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("is_safe_prime: p must be an odd prime");
    return is_prime((p - 1) / 2);
}

/// If q = p^r for a prime p, returns (p, r); otherwise (0, 0).
inline std::pair<std::uint64_t, unsigned> prime_power_decomposition(std::uint64_t q) {
    if (q < 2) return {0, 0};
    auto f = factorize(q);
    if (f.factors.size() != 1) return {0, 0};
    return f.factors.front();
}

inline bool is_prime_power(std::uint64_t q) { return prime_power_decomposition(q).first != 0; }

/// base^exp mod m, m < 2^32.
inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m (gcd(a, m) = 1 required).
inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t quot = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - quot * r};
        std::tie(old_s, s) = std::pair{s, old_s - quot * s};
    }
    if (old_r != 1) throw std::invalid_argument("mod_inverse: not invertible");
    auto mm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

/// Largest k >= 0 with k <= (c_num / c_den) * sqrt(m), i.e. k^2 c_den^2 <= c_num^2 m.
inline std::uint64_t floor_scaled_sqrt(std::uint64_t c_num, std::uint64_t c_den, std::uint64_t m) {
    if (c_den == 0) throw std::invalid_argument("floor_scaled_sqrt: zero denominator");
    using u128 = unsigned __int128;
    const u128 rhs = u128(c_num) * c_num * m;
    const u128 den2 = u128(c_den) * c_den;
    auto fits = [&](std::uint64_t k) { return u128(k) * k * den2 <= rhs; };
    // (c_num/c_den)*sqrt(m) < c_num * m + 1, which bounds the search interval.
    std::uint64_t lo = 0, hi = c_num * (m + 1) / c_den + 2;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (fits(mid)) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

/// Largest k >= 0 with k <= (c_num / c_den) * (1 + sqrt(m)).
/// Equivalent to (k c_den - c_num)^2 <= c_num^2 m whenever k c_den >= c_num.
inline std::uint64_t floor_scaled_one_plus_sqrt(std::uint64_t c_num, std::uint64_t c_den, std::uint64_t m) {
    if (c_den == 0) throw std::invalid_argument("floor_scaled_one_plus_sqrt: zero denominator");
    using i128 = __int128;
    const i128 rhs = i128(c_num) * c_num * m;
    auto fits = [&](std::uint64_t k) {
        i128 lhs = i128(k) * c_den - i128(c_num);
        return lhs <= 0 || lhs * lhs <= rhs;
    };
    std::uint64_t lo = 0, hi = c_num * (m + 2) / c_den + 2;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (fits(mid)) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

}  // namespace costas
