#pragma once

// Arithmetic in GF(p^d), polynomial basis over the prime field.
//
// GF(q^3) for q = p^m is represented directly as GF(p^{3m}); the subfield GF(q)
// is the fixed field of the q-power Frobenius, so no tower arithmetic is needed.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "number_theory.hpp"

namespace sidonpds {

using Coeff = std::uint32_t;

/// Coefficient of x^0 first; length equals the field degree.
struct FieldElem {
    std::vector<Coeff> coeffs;

    bool is_zero() const {
        for (Coeff c : coeffs)
            if (c != 0) return false;
        return true;
    }
    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

namespace detail {

using Poly = std::vector<Coeff>;  // low degree first, no trailing zeros (empty = 0)

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_sub(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = static_cast<Coeff>((a[i] + p - b[i]) % p);
    trim(a);
    return a;
}

/// a mod f over GF(p); f need not be monic but must be nonzero.
inline Poly poly_rem(Poly a, const Poly& f, u64 p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const i64 lead_inv = *mod_inverse(f.back(), static_cast<i64>(p));
    while (a.size() >= f.size()) {
        const u64 c = static_cast<u64>(a.back()) * static_cast<u64>(lead_inv) % p;
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t j = 0; j <= df; ++j)
            a[shift + j] = static_cast<Coeff>((a[shift + j] + (p - c) * f[j]) % p);
        trim(a);
    }
    return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<u64>(a[i]) * b[j]) % p;
    }
    Poly out(acc.begin(), acc.end());
    trim(out);
    return out;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly result{1};
    base = poly_rem(std::move(base), f, p);
    while (e > 0) {
        if (e & 1) result = poly_rem(poly_mul(result, base, p), f, p);
        e >>= 1;
        if (e) base = poly_rem(poly_mul(base, base, p), f, p);
    }
    return result;
}

/// f irreducible over GF(p) iff gcd(f, x^{p^k} - x) = 1 for k = 1..deg(f)/2.
inline bool is_irreducible(const Poly& f, u64 p) {
    const std::size_t d = f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    Poly h{0, 1};
    for (std::size_t k = 1; k <= d / 2; ++k) {
        h = poly_powmod(h, p, f, p);
        const Poly g = poly_gcd(f, poly_sub(h, Poly{0, 1}, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace detail

/// Immutable description of GF(p^d).
class FieldCtx {
public:
    /// Field with the first monic irreducible modulus of the given degree, scanning
    /// coefficient vectors (c_0 least significant) in increasing index order.
    static FieldCtx make(u64 p, unsigned degree) {
        if (!is_prime(p)) throw std::invalid_argument("FieldCtx: characteristic must be prime");
        if (degree == 0) throw std::invalid_argument("FieldCtx: degree must be positive");
        const u64 count = ipow(p, degree);
        for (u64 idx = 0; idx < count; ++idx) {
            detail::Poly f(degree + 1, 0);
            u64 t = idx;
            for (unsigned i = 0; i < degree; ++i, t /= p) f[i] = static_cast<Coeff>(t % p);
            f[degree] = 1;
            if (detail::is_irreducible(f, p)) return FieldCtx(p, std::move(f));
        }
        throw std::logic_error("FieldCtx: no irreducible polynomial found");
    }

    /// Explicit monic modulus, low coefficient first (length degree + 1).
    FieldCtx(u64 p, std::vector<Coeff> modulus) : p_(p), modulus_(std::move(modulus)) {
        if (!is_prime(p_)) throw std::invalid_argument("FieldCtx: characteristic must be prime");
        if (modulus_.size() < 2 || modulus_.back() != 1)
            throw std::invalid_argument("FieldCtx: modulus must be monic of positive degree");
        for (Coeff c : modulus_)
            if (c >= p_) throw std::invalid_argument("FieldCtx: modulus coefficient out of range");
        if (!detail::is_irreducible(modulus_, p_)) throw std::invalid_argument("FieldCtx: modulus is reducible");
        degree_ = static_cast<unsigned>(modulus_.size() - 1);
        order_ = ipow(p_, degree_);
        group_order_factors_ = factorize(order_ - 1);
    }

    u64 characteristic() const { return p_; }
    unsigned degree() const { return degree_; }
    /// p^d
    u64 order() const { return order_; }
    const std::vector<Coeff>& modulus() const { return modulus_; }
    /// Prime factors of p^d - 1 with multiplicity (empty for GF(2)).
    const std::vector<u64>& group_order_factorization() const { return group_order_factors_; }

    FieldElem zero() const { return FieldElem{std::vector<Coeff>(degree_, 0)}; }
    FieldElem one() const {
        auto e = zero();
        e.coeffs[0] = 1;
        return e;
    }
    /// The element with coefficient vector given by the base-p digits of idx.
    FieldElem from_index(u64 idx) const {
        if (idx >= order_) throw std::out_of_range("FieldCtx::from_index");
        auto e = zero();
        for (unsigned i = 0; i < degree_; ++i, idx /= p_) e.coeffs[i] = static_cast<Coeff>(idx % p_);
        return e;
    }
    u64 index_of(const FieldElem& a) const {
        u64 idx = 0;
        for (unsigned i = degree_; i-- > 0;) idx = idx * p_ + a.coeffs[i];
        return idx;
    }
    bool contains(const FieldElem& a) const {
        if (a.coeffs.size() != degree_) return false;
        for (Coeff c : a.coeffs)
            if (c >= p_) return false;
        return true;
    }

    FieldElem add(const FieldElem& a, const FieldElem& b) const {
        FieldElem r = a;
        for (unsigned i = 0; i < degree_; ++i) r.coeffs[i] = static_cast<Coeff>((a.coeffs[i] + b.coeffs[i]) % p_);
        return r;
    }
    FieldElem neg(const FieldElem& a) const {
        FieldElem r = a;
        for (auto& c : r.coeffs) c = static_cast<Coeff>((p_ - c) % p_);
        return r;
    }
    FieldElem sub(const FieldElem& a, const FieldElem& b) const { return add(a, neg(b)); }
    FieldElem scale(const FieldElem& a, Coeff k) const {
        FieldElem r = a;
        for (auto& c : r.coeffs) c = static_cast<Coeff>(static_cast<u64>(c) * k % p_);
        return r;
    }

    FieldElem mul(const FieldElem& a, const FieldElem& b) const {
        const unsigned d = degree_;
        std::vector<u64> acc(2 * d - 1, 0);
        for (unsigned i = 0; i < d; ++i) {
            if (a.coeffs[i] == 0) continue;
            for (unsigned j = 0; j < d; ++j) acc[i + j] += static_cast<u64>(a.coeffs[i]) * b.coeffs[j];
        }
        for (auto& c : acc) c %= p_;
        for (unsigned i = 2 * d - 1; i-- > d;) {
            const u64 c = acc[i];
            if (c == 0) continue;
            for (unsigned j = 0; j < d; ++j) acc[i - d + j] = (acc[i - d + j] + (p_ - c) * modulus_[j]) % p_;
        }
        FieldElem r;
        r.coeffs.assign(acc.begin(), acc.begin() + d);
        return r;
    }

    FieldElem pow(FieldElem base, u64 e) const {
        FieldElem result = one();
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return result;
    }

    /// Inverse of a nonzero element via a^(p^d - 2).
    FieldElem inverse(const FieldElem& a) const {
        if (a.is_zero()) throw std::domain_error("FieldCtx::inverse of zero");
        return pow(a, order_ - 2);
    }

private:
    u64 p_ = 0;
    unsigned degree_ = 0;
    u64 order_ = 0;
    std::vector<Coeff> modulus_;
    std::vector<u64> group_order_factors_;
};

inline FieldElem field_mul(const FieldCtx& ctx, const FieldElem& a, const FieldElem& b) { return ctx.mul(a, b); }
inline FieldElem field_pow(const FieldCtx& ctx, const FieldElem& a, u64 e) { return ctx.pow(a, e); }

/// True iff g has multiplicative order exactly p^d - 1.
inline bool is_primitive(const FieldCtx& ctx, const FieldElem& g) {
    if (g.is_zero()) return false;
    const u64 n = ctx.order() - 1;
    const FieldElem one = ctx.one();
    if (ctx.pow(g, n) != one) return false;
    for (u64 r : distinct_prime_factors(n == 0 ? 1 : n))
        if (ctx.pow(g, n / r) == one) return false;
    return true;
}

/// First primitive element in index order, starting from x (from 1 when d = 1).
inline FieldElem find_primitive_element(const FieldCtx& ctx) {
    const u64 start = ctx.degree() == 1 ? 1 : ctx.characteristic();
    for (u64 idx = start; idx < ctx.order(); ++idx) {
        FieldElem g = ctx.from_index(idx);
        if (is_primitive(ctx, g)) return g;
    }
    throw std::logic_error("find_primitive_element: no generator found (invalid field context)");
}

/// Relative trace Tr_{GF(p^d)/GF(p^s)}(a) = sum of a^{Q^i}, Q = p^s, i < d/s.
inline FieldElem trace_to_base(const FieldCtx& ctx, unsigned sub_degree, const FieldElem& a) {
    if (sub_degree == 0 || ctx.degree() % sub_degree != 0)
        throw std::invalid_argument("trace_to_base: sub_degree must divide the field degree");
    const u64 q = ipow(ctx.characteristic(), sub_degree);
    FieldElem term = a;
    FieldElem sum = a;
    for (unsigned i = 1; i < ctx.degree() / sub_degree; ++i) {
        term = ctx.pow(term, q);
        sum = ctx.add(sum, term);
    }
    return sum;
}

/// The trace as a GF(p)-linear map, for evaluating it over many elements.
class TraceMap {
public:
    TraceMap(const FieldCtx& ctx, unsigned sub_degree) : p_(ctx.characteristic()), d_(ctx.degree()) {
        columns_.reserve(d_);
        for (unsigned j = 0; j < d_; ++j) {
            FieldElem basis = ctx.zero();
            basis.coeffs[j] = 1;
            columns_.push_back(trace_to_base(ctx, sub_degree, basis).coeffs);
        }
    }

    FieldElem apply(const FieldElem& a) const {
        std::vector<u64> acc(d_, 0);
        for (unsigned j = 0; j < d_; ++j) {
            if (a.coeffs[j] == 0) continue;
            for (unsigned i = 0; i < d_; ++i) acc[i] = (acc[i] + static_cast<u64>(a.coeffs[j]) * columns_[j][i]) % p_;
        }
        return FieldElem{std::vector<Coeff>(acc.begin(), acc.end())};
    }

    bool is_zero_at(const FieldElem& a) const { return apply(a).is_zero(); }

private:
    u64 p_;
    unsigned d_;
    std::vector<std::vector<Coeff>> columns_;
};

}  // namespace sidonpds
