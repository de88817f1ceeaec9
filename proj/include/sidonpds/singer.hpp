#pragma once

// Singer perfect difference sets of order q + 1 in Z_{q^2+q+1}, built two ways:
//   trace-zero:  { i : Tr_{GF(q^3)/GF(q)}(g^i) = 0 } for a primitive g of GF(q^3)
//   recurrence:  zero positions of x_k = a1 x_{k-1} + a2 x_{k-2} + a3 x_{k-3} over GF(q),
//                seed (0, 0, 1), taken over one full period q^3 - 1 and reduced mod v.

#include <array>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "finite_field.hpp"
#include "sidon_core.hpp"

namespace sidonpds {

enum class SingerMethod { TraceZero, HuRecurrence };

inline const char* to_string(SingerMethod m) { return m == SingerMethod::TraceZero ? "trace-zero" : "recurrence"; }

struct SingerPds {
    i64 q = 0;
    i64 v = 0;
    Elems elems;
    SingerMethod method = SingerMethod::TraceZero;

    Pds pds() const { return Pds{v, elems}; }
};

/// Elements of GF(q), encoded by FieldCtx index.
struct RecurrenceCoeffs {
    u64 a1 = 0, a2 = 0, a3 = 0;

    friend bool operator==(const RecurrenceCoeffs&, const RecurrenceCoeffs&) = default;
};

class InvalidCoefficients : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline PrimePowerDecomp require_prime_power(i64 q) {
    auto d = is_prime_power(q);
    if (!d) throw std::invalid_argument("q=" + std::to_string(q) + " is not a prime power");
    return *d;
}

/// GF(q) with dense add/mul tables over FieldCtx indices.
class SmallField {
public:
    explicit SmallField(i64 q) {
        const auto d = require_prime_power(q);
        q_ = d.q;
        const auto ctx = FieldCtx::make(d.p, d.m);
        add_.resize(q_ * q_);
        mul_.resize(q_ * q_);
        std::vector<FieldElem> elems;
        elems.reserve(q_);
        for (u64 i = 0; i < q_; ++i) elems.push_back(ctx.from_index(i));
        for (u64 i = 0; i < q_; ++i) {
            for (u64 j = 0; j < q_; ++j) {
                add_[i * q_ + j] = static_cast<std::uint32_t>(ctx.index_of(ctx.add(elems[i], elems[j])));
                mul_[i * q_ + j] = static_cast<std::uint32_t>(ctx.index_of(ctx.mul(elems[i], elems[j])));
            }
        }
    }

    u64 size() const { return q_; }
    u64 add(u64 a, u64 b) const { return add_[a * q_ + b]; }
    u64 mul(u64 a, u64 b) const { return mul_[a * q_ + b]; }
    u64 neg(u64 a) const {
        for (u64 b = 0; b < q_; ++b)
            if (add(a, b) == 0) return b;
        throw std::logic_error("SmallField::neg");
    }

private:
    u64 q_ = 0;
    std::vector<std::uint32_t> add_, mul_;
};

namespace detail {

// Residues mod t^3 - a1 t^2 - a2 t - a3 over GF(q), low coefficient first.
using Cubic = std::array<u64, 3>;

inline Cubic cubic_mulmod(const SmallField& f, const RecurrenceCoeffs& c, const Cubic& x, const Cubic& y) {
    std::array<u64, 5> prod{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) prod[i + j] = f.add(prod[i + j], f.mul(x[i], y[j]));
    // t^3 = a1 t^2 + a2 t + a3
    for (int k = 4; k >= 3; --k) {
        const u64 top = prod[k];
        prod[k] = 0;
        prod[k - 1] = f.add(prod[k - 1], f.mul(top, c.a1));
        prod[k - 2] = f.add(prod[k - 2], f.mul(top, c.a2));
        prod[k - 3] = f.add(prod[k - 3], f.mul(top, c.a3));
    }
    return {prod[0], prod[1], prod[2]};
}

inline Cubic cubic_pow_t(const SmallField& f, const RecurrenceCoeffs& c, u64 e) {
    Cubic result{1, 0, 0};
    Cubic base{0, 1, 0};
    while (e > 0) {
        if (e & 1) result = cubic_mulmod(f, c, result, base);
        e >>= 1;
        if (e) base = cubic_mulmod(f, c, base, base);
    }
    return result;
}

}  // namespace detail

/// True iff t has order q^3 - 1 modulo the characteristic polynomial, i.e. the
/// polynomial is primitive over GF(q). Reducible cubics cannot reach that order.
inline bool is_primitive_recurrence(const SmallField& f, const RecurrenceCoeffs& c) {
    if (c.a3 == 0) return false;
    const u64 q = f.size();
    const u64 n = q * q * q - 1;
    const detail::Cubic one{1, 0, 0};
    if (detail::cubic_pow_t(f, c, n) != one) return false;
    for (u64 r : distinct_prime_factors(n))
        if (detail::cubic_pow_t(f, c, n / r) == one) return false;
    return true;
}

/// First primitive triple in lexicographic (a1, a2, a3) order with a3 != 0.
/// `trials` caps the number of triples examined (0 = unlimited).
inline RecurrenceCoeffs find_primitive_coeffs(i64 q, u64 trials = 0) {
    const SmallField f(q);
    const u64 qq = f.size();
    u64 examined = 0;
    for (u64 a1 = 0; a1 < qq; ++a1)
        for (u64 a2 = 0; a2 < qq; ++a2)
            for (u64 a3 = 1; a3 < qq; ++a3) {
                if (trials && examined++ >= trials) throw std::runtime_error("find_primitive_coeffs: trial budget exhausted");
                const RecurrenceCoeffs c{a1, a2, a3};
                if (is_primitive_recurrence(f, c)) return c;
            }
    throw std::logic_error("find_primitive_coeffs: no primitive cubic found");
}

/// Seed-driven random search for a primitive triple.
inline RecurrenceCoeffs find_random_primitive_coeffs(i64 q, std::uint64_t seed, u64 trials = 100000) {
    const SmallField f(q);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> any(0, f.size() - 1), nonzero(1, f.size() - 1);
    for (u64 t = 0; t < trials; ++t) {
        const RecurrenceCoeffs c{any(rng), any(rng), nonzero(rng)};
        if (is_primitive_recurrence(f, c)) return c;
    }
    throw std::runtime_error("find_random_primitive_coeffs: trial budget exhausted");
}

inline SingerPds singer_pds_trace(i64 q) {
    const auto d = require_prime_power(q);
    const auto ctx = FieldCtx::make(d.p, 3 * d.m);
    const FieldElem g = find_primitive_element(ctx);
    const TraceMap trace(ctx, d.m);

    SingerPds out{q, plane_modulus(q), {}, SingerMethod::TraceZero};
    FieldElem cur = ctx.one();
    for (i64 i = 0; i < out.v; ++i) {
        if (trace.is_zero_at(cur)) out.elems.push_back(i);
        cur = ctx.mul(cur, g);
    }
    if (static_cast<i64>(out.elems.size()) != q + 1 || !verify_pds(out.elems, out.v))
        throw std::logic_error("singer_pds_trace: construction failed for q=" + std::to_string(q));
    return out;
}

inline SingerPds singer_pds_recurrence(i64 q, const RecurrenceCoeffs& c) {
    const SmallField f(q);
    const u64 qq = f.size();
    if (c.a1 >= qq || c.a2 >= qq || c.a3 >= qq) throw InvalidCoefficients("recurrence coefficient outside GF(q)");
    const i64 v = plane_modulus(q);
    const u64 period = qq * qq * qq - 1;

    std::vector<char> hit(static_cast<std::size_t>(v), 0);
    u64 zeros = 0;
    u64 x0 = 0, x1 = 0, x2 = 1;  // x_k, x_{k+1}, x_{k+2}
    for (u64 k = 0; k < period; ++k) {
        if (x0 == 0) {
            ++zeros;
            hit[k % static_cast<u64>(v)] = 1;
        }
        const u64 next = f.add(f.add(f.mul(c.a1, x2), f.mul(c.a2, x1)), f.mul(c.a3, x0));
        x0 = x1;
        x1 = x2;
        x2 = next;
    }

    SingerPds out{q, v, {}, SingerMethod::HuRecurrence};
    for (i64 r = 0; r < v; ++r)
        if (hit[r]) out.elems.push_back(r);
    if (zeros != qq * qq - 1 || static_cast<i64>(out.elems.size()) != q + 1 || !verify_pds(out.elems, v))
        throw InvalidCoefficients("recurrence coefficients are not primitive for q=" + std::to_string(q));
    return out;
}

/// (a, b) with gcd(a, v) = 1 and a*B1 + b = B2, smallest a first.
inline std::optional<std::pair<i64, i64>> affine_equivalent(i64 v, const Elems& b1, const Elems& b2) {
    if (b1.size() != b2.size()) return std::nullopt;
    if (b1.empty()) return std::make_pair<i64, i64>(1, 0);
    std::vector<char> target(static_cast<std::size_t>(v), 0);
    for (i64 x : b2) target[mod(x, v)] = 1;
    for (i64 a = 1; a < v; ++a) {
        if (std::gcd(a, v) != 1) continue;
        for (i64 anchor : b1) {
            const i64 b = mod(b2.front() - a * mod(anchor, v), v);
            bool ok = true;
            for (i64 x : b1)
                if (!target[mod(a * mod(x, v) + b, v)]) {
                    ok = false;
                    break;
                }
            if (ok) return std::make_pair(a, b);
        }
    }
    return std::nullopt;
}

}  // namespace sidonpds
