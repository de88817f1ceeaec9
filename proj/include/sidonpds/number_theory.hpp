#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sidonpds {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// q = p^m with p prime.
struct PrimePowerDecomp {
    u64 q = 0;
    u64 p = 0;
    unsigned m = 0;

    friend bool operator==(const PrimePowerDecomp&, const PrimePowerDecomp&) = default;
};

/// Prime factors of n with multiplicity, ascending. factorize(1) is empty.
inline std::vector<u64> factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<u64> out;
    while (n % 2 == 0) {
        out.push_back(2);
        n /= 2;
    }
    for (u64 d = 3; d <= n / d; d += 2) {
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Distinct prime factors, ascending.
inline std::vector<u64> distinct_prime_factors(u64 n) {
    auto f = factorize(n);
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::optional<PrimePowerDecomp> is_prime_power(i64 q) {
    if (q < 2) return std::nullopt;
    const auto f = factorize(static_cast<u64>(q));
    if (f.front() != f.back()) return std::nullopt;
    return PrimePowerDecomp{static_cast<u64>(q), f.front(), static_cast<unsigned>(f.size())};
}

/// Prime powers in [lo, hi], ascending.
inline std::vector<i64> prime_powers_in(i64 lo, i64 hi) {
    std::vector<i64> out;
    for (i64 q = std::max<i64>(lo, 2); q <= hi; ++q)
        if (is_prime_power(q)) out.push_back(q);
    return out;
}

/// Nonnegative residue of x mod m (m > 0).
constexpr i64 mod(i64 x, i64 m) {
    const i64 r = x % m;
    return r < 0 ? r + m : r;
}

/// Inverse of a mod m, or nullopt when gcd(a, m) != 1.
inline std::optional<i64> mod_inverse(i64 a, i64 m) {
    i64 old_r = mod(a, m), r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 t = old_r / r;
        old_r -= t * r;
        std::swap(old_r, r);
        old_s -= t * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) return m == 1 ? std::optional<i64>(0) : std::nullopt;
    return mod(old_s, m);
}

/// v = q^2 + q + 1, the modulus of a projective plane of order q.
constexpr i64 plane_modulus(i64 q) { return q * q + q + 1; }

/// Exact integer power, no overflow checking.
constexpr u64 ipow(u64 base, unsigned e) {
    u64 r = 1;
    while (e--) r *= base;
    return r;
}

}  // namespace sidonpds
