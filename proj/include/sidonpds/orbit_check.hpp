#pragma once

// Affine-orbit extension check against the Singer PDS of each prime-power order.
//
// S extends into B (a PDS in Z_v) iff a*S + b is a subset of B for some unit a and
// shift b. With S normalized so s_0 = 0, the images of s_0 and of a unit pivot s_j
// are two distinct elements b0, b1 of B, which forces a = (b1 - b0) / s_j. Each
// nonzero difference of B arises from exactly one pair, so scanning the differences
// delta = b1 - b0 covers every affine image in O(v |S|).

#include <cassert>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sidon_core.hpp"

namespace sidonpds {

struct AffineWitness {
    i64 q = 0;
    i64 v = 0;
    i64 a = 0;
    i64 b = 0;
    Elems image;  // sorted {a*s + b mod v : s in normalize(S)}

    friend bool operator==(const AffineWitness&, const AffineWitness&) = default;
};

struct Extends {
    AffineWitness witness;
};
struct NoImage {
    std::string reason;
};
struct SkippedCollision {
    std::string reason;
};
struct SkippedNoCache {
    std::string reason;
};
struct SkippedTooBig {
    std::string reason;
};

using CheckOutcome = std::variant<Extends, NoImage, SkippedCollision, SkippedNoCache, SkippedTooBig>;

inline bool extends(const CheckOutcome& o) { return std::holds_alternative<Extends>(o); }
inline bool is_skip(const CheckOutcome& o) { return !extends(o) && !std::holds_alternative<NoImage>(o); }

inline std::string reason(const CheckOutcome& o) {
    return std::visit(
        [](const auto& x) -> std::string {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Extends>)
                return "extends";
            else
                return x.reason;
        },
        o);
}

struct CheckReport {
    bool extends = false;
    std::optional<AffineWitness> witness;
    std::vector<std::pair<i64, i64>> checked;           // (q, v) ruled out
    std::vector<std::pair<i64, std::string>> skipped;   // (q, reason)
};

/// Confidence class of a per-q verdict that relies on the Singer orbit being the only one.
enum class Rigor { Hall1947, ExplicitCheckCited, PrimePowerConjecture };

inline Rigor rigor_class(i64 q) {
    if (q <= 40) return Rigor::Hall1947;
    switch (q) {
        case 121: case 125: case 128: case 169: case 256: case 1024: return Rigor::ExplicitCheckCited;
        default: return Rigor::PrimePowerConjecture;
    }
}

inline const char* to_string(Rigor r) {
    switch (r) {
        case Rigor::Hall1947: return "Hall47";
        case Rigor::ExplicitCheckCited: return "explicit-check";
        default: return "PPC";
    }
}

namespace detail {

inline Elems normalized_residues(const SidonSet& s, i64 v) {
    Elems out;
    out.reserve(s.size());
    for (i64 x : s) out.push_back(mod(x - s.min(), v));
    return out;
}

inline std::vector<char> membership(const Pds& b) {
    std::vector<char> in(static_cast<std::size_t>(b.v), 0);
    for (i64 x : b.elems) in[x] = 1;
    return in;
}

inline bool image_inside(const Elems& s_norm, i64 a, i64 b0, i64 v, const std::vector<char>& in) {
    for (i64 s : s_norm)
        if (!in[mod(a * s + b0, v)]) return false;
    return true;
}

inline Extends make_extends(i64 q, i64 v, i64 a, i64 b0, const Elems& s_norm) {
    return Extends{AffineWitness{q, v, a, b0, affine_image(s_norm, a, b0, v)}};
}

// Unit mask of Z_v.
inline std::vector<char> units_mod(i64 v) {
    std::vector<char> unit(static_cast<std::size_t>(v), 1);
    unit[0] = v == 1;
    for (u64 p : distinct_prime_factors(static_cast<u64>(v)))
        for (i64 m = 0; m < v; m += static_cast<i64>(p)) unit[m] = 0;
    return unit;
}

// first[d] = the b in B with b + d in B (d != 0). Well defined because B is perfect.
inline std::vector<i64> difference_origins(const Pds& b) {
    std::vector<i64> first(static_cast<std::size_t>(b.v), -1);
    for (i64 x : b.elems)
        for (i64 y : b.elems)
            if (x != y) first[mod(y - x, b.v)] = x;
    return first;
}

// Every ordered pair (b0, b1) of distinct elements of B is the unique representation
// of delta = b1 - b0, so scanning delta = 1..v-1 visits each pair once. With
// a = delta / s_pivot, the image of s_j is b0 + delta * r_j (r_j = s_j / s_pivot),
// which lies in B iff first[delta * r_j] == b0.
inline std::optional<Extends> pivot_scan(const Elems& s_norm, std::size_t pivot, i64 q, const Pds& b,
                                         const std::vector<i64>& first, const std::vector<char>& unit) {
    const i64 v = b.v;
    const i64 inv = *mod_inverse(s_norm[pivot], v);
    std::vector<i64> ratio, cur;
    for (std::size_t j = 1; j < s_norm.size(); ++j)
        if (j != pivot) ratio.push_back(mod(s_norm[j] * inv, v));
    cur.assign(ratio.size(), 0);
    for (i64 delta = 1; delta < v; ++delta) {
        bool ok = unit[delta] != 0;
        const i64 b0 = first[delta];
        for (std::size_t j = 0; j < ratio.size(); ++j) {
            cur[j] += ratio[j];
            if (cur[j] >= v) cur[j] -= v;
            if (ok && (cur[j] == 0 || first[cur[j]] != b0)) ok = false;
        }
        if (ok) return make_extends(q, v, mod(delta * inv, v), b0, s_norm);
    }
    return std::nullopt;
}

}  // namespace detail

/// Lookup tables derived from a PDS, reusable across checks.
struct ScanIndex {
    std::vector<i64> first;
    std::vector<char> unit;

    explicit ScanIndex(const Pds& b) : first(detail::difference_origins(b)), unit(detail::units_mod(b.v)) {}
};

/// In-memory map q -> PDS, callable as a PDS source (returns nullptr when absent).
class PdsTable {
public:
    void insert(i64 q, Pds b) {
        auto index = std::make_shared<const ScanIndex>(b);
        table_.insert_or_assign(q, Entry{std::move(b), std::move(index)});
    }
    const Pds* operator()(i64 q) const {
        auto it = table_.find(q);
        return it == table_.end() ? nullptr : &it->second.pds;
    }
    const ScanIndex* index(i64 q) const {
        auto it = table_.find(q);
        return it == table_.end() ? nullptr : it->second.index.get();
    }
    std::size_t size() const { return table_.size(); }
    i64 max_q() const { return table_.empty() ? 0 : table_.rbegin()->first; }

private:
    struct Entry {
        Pds pds;
        std::shared_ptr<const ScanIndex> index;
    };
    std::map<i64, Entry> table_;
};

/// Exhaustive scan over a in (Z_v)*, b in Z_v. Used as the oracle for the fast paths.
inline CheckOutcome brute_force_at_q(const SidonSet& s, i64 q, const Pds& b) {
    const i64 v = b.v;
    const Elems s_norm = detail::normalized_residues(s, v);
    const auto in = detail::membership(b);
    for (i64 a = 1; a < v; ++a) {
        if (std::gcd(a, v) != 1) continue;
        for (i64 shift = 0; shift < v; ++shift)
            if (detail::image_inside(s_norm, a, shift, v, in)) return detail::make_extends(q, v, a, shift, s_norm);
    }
    return NoImage{"brute force: no extension"};
}

/// Case gcd(normalized S, v) = g > 1: every image a*S + b lies in one coset b + gZ_v.
inline CheckOutcome coset_path(const SidonSet& s, const Elems& s_norm, i64 q, i64 v, const Pds& b, i64 g) {
    const std::size_t n = s_norm.size();
    std::map<i64, Elems> cosets;
    for (i64 x : b.elems) cosets[x % g].push_back(x);
    std::vector<i64> eligible;
    for (const auto& [c, members] : cosets)
        if (members.size() >= n) eligible.push_back(c);
    if (eligible.empty())
        return NoImage{"no eligible coset: no coset of g=" + std::to_string(g) + " holds " + std::to_string(n) + " elements of B"};

    const i64 v_red = v / g;
    Elems s_red;
    for (i64 x : s_norm) s_red.push_back(x / g);
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < n && !pivot; ++j)
        if (std::gcd(s_red[j], v_red) == 1) pivot = j;
    if (!pivot) return brute_force_at_q(s, q, b);
    const i64 pivot_inv = *mod_inverse(s_red[pivot], v_red);

    const auto in = detail::membership(b);
    for (i64 c : eligible) {
        const Elems& pool = cosets[c];
        for (i64 b0 : pool) {
            for (i64 b1 : pool) {
                if (b1 == b0) continue;
                const i64 a_red = mod(mod((b1 - b0) / g, v_red) * pivot_inv, v_red);
                if (a_red == 0 || std::gcd(a_red, v_red) != 1) continue;
                for (i64 k = 0; k < g; ++k) {
                    const i64 a = (a_red + k * v_red) % v;
                    if (a == 0 || std::gcd(a, v) != 1) continue;
                    if (detail::image_inside(s_norm, a, b0, v, in)) return detail::make_extends(q, v, a, b0, s_norm);
                }
            }
        }
    }
    return NoImage{"no affine image of S in B (coset path)"};
}

/// Does some affine image of S lie inside B (a PDS in Z_{q^2+q+1})?
inline CheckOutcome fast_extends_at_q(const SidonSet& s, i64 q, const Pds& b, const ScanIndex* index = nullptr) {
    const i64 v = b.v;
    const auto n = static_cast<i64>(s.size());
    if (!sidon_distinct_mod(s, v)) return SkippedCollision{"S has collision mod " + std::to_string(v)};
    if (n > q + 1) return SkippedTooBig{"|S|=" + std::to_string(n) + " > q+1=" + std::to_string(q + 1)};
    if (n <= 1) return detail::make_extends(q, v, 1, b.elems.front(), detail::normalized_residues(s, v));

    const Elems s_norm = detail::normalized_residues(s, v);
    i64 g = 0;
    for (i64 x : s_norm) g = std::gcd(g, x);
    g = std::gcd(g, v);
    if (g > 1) return coset_path(s, s_norm, q, v, b, g);

    std::optional<ScanIndex> local;
    if (!index) index = &local.emplace(b);
    const auto& first = index->first;
    const auto& unit = index->unit;
    for (std::size_t j = 1; j < s_norm.size(); ++j) {
        if (!unit[s_norm[j]]) continue;
        if (auto hit = detail::pivot_scan(s_norm, j, q, b, first, unit)) return *hit;
#ifndef NDEBUG
        // Any unit pivot is complete on its own; the others must agree.
        for (std::size_t k = j + 1; k < s_norm.size(); ++k)
            if (unit[s_norm[k]]) assert(!detail::pivot_scan(s_norm, k, q, b, first, unit));
#endif
        return NoImage{"no affine image of S in B"};
    }
    return brute_force_at_q(s, q, b);
}

/// Check at q, fetching B from a source; a missing PDS is a skip, never a pass.
template <class Source>
CheckOutcome check_at_q(const SidonSet& s, i64 q, const Source& source) {
    const auto b = source(q);
    if (!b) return SkippedNoCache{"no cached PDS for q=" + std::to_string(q)};
    if constexpr (requires { source.index(q); })
        return fast_extends_at_q(s, q, *b, source.index(q));
    else
        return fast_extends_at_q(s, q, *b);
}

/// Scan prime powers q in [max(2, |S| - 1), q_max]; stop at the first extension.
template <class Source>
CheckReport fast_check(const SidonSet& s, i64 q_max, const Source& source) {
    CheckReport report;
    const i64 q_lo = std::max<i64>(2, static_cast<i64>(s.size()) - 1);
    for (i64 q = q_lo; q <= q_max; ++q) {
        if (!is_prime_power(q)) continue;
        CheckOutcome o = check_at_q(s, q, source);
        if (auto* e = std::get_if<Extends>(&o)) {
            report.extends = true;
            report.witness = e->witness;
            return report;
        }
        if (is_skip(o))
            report.skipped.emplace_back(q, reason(o));
        else
            report.checked.emplace_back(q, plane_modulus(q));
    }
    return report;
}

/// Independent re-check of a witness against B.
inline bool witness_valid(const SidonSet& s, const AffineWitness& w, const Pds& b) {
    if (w.v != b.v || std::gcd(w.a, w.v) != 1) return false;
    Elems s_norm;
    for (i64 x : s) s_norm.push_back(x - s.min());
    if (affine_image(s_norm, w.a, w.b, w.v) != w.image) return false;
    for (i64 x : w.image)
        if (!std::binary_search(b.elems.begin(), b.elems.end(), x)) return false;
    return true;
}

}  // namespace sidonpds
