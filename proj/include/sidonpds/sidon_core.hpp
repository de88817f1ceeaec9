#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "number_theory.hpp"

namespace sidonpds {

using Elems = std::vector<i64>;

inline Elems sorted_unique(Elems xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

/// True iff the values are distinct and all pairwise differences are distinct.
/// Unsorted input is sorted first; duplicates make the set non-Sidon.
inline bool is_sidon(Elems xs) {
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) return false;
    std::vector<i64> diffs;
    diffs.reserve(xs.size() * (xs.size() - (xs.empty() ? 0 : 1)) / 2);
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) diffs.push_back(xs[j] - xs[i]);
    std::sort(diffs.begin(), diffs.end());
    return std::adjacent_find(diffs.begin(), diffs.end()) == diffs.end();
}

/// Strictly increasing nonnegative integers with distinct pairwise differences.
class SidonSet {
public:
    SidonSet() = default;
    SidonSet(std::initializer_list<i64> xs) : SidonSet(Elems(xs)) {}
    explicit SidonSet(Elems xs) : elems_(sorted_unique(std::move(xs))) {
        if (!elems_.empty() && elems_.front() < 0) throw std::invalid_argument("SidonSet: negative element");
        if (!is_sidon(elems_)) throw std::invalid_argument("SidonSet: " + to_string() + " is not Sidon");
    }

    const Elems& elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    i64 min() const { return elems_.front(); }
    i64 max() const { return elems_.back(); }
    i64 operator[](std::size_t i) const { return elems_[i]; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) s += (i ? ", " : "") + std::to_string(elems_[i]);
        return s + "}";
    }

    friend bool operator==(const SidonSet&, const SidonSet&) = default;
    friend auto operator<=>(const SidonSet& a, const SidonSet& b) { return a.elems_ <=> b.elems_; }

private:
    Elems elems_;
};

/// Residue set in Z_v whose differences cover every nonzero residue exactly once.
struct Pds {
    i64 v = 0;
    Elems elems;

    friend bool operator==(const Pds&, const Pds&) = default;
};

/// Positive differences s_j - s_i (j > i), ascending.
struct DiffSignature {
    std::vector<i64> diffs;

    friend bool operator==(const DiffSignature&, const DiffSignature&) = default;
};

inline DiffSignature diff_signature(const SidonSet& s) {
    DiffSignature sig;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) sig.diffs.push_back(s[j] - s[i]);
    std::sort(sig.diffs.begin(), sig.diffs.end());
    return sig;
}

/// True iff all signed differences of the set, reduced mod v, are nonzero and distinct.
inline bool sidon_distinct_mod(const Elems& s, i64 v) {
    if (v < 2) throw std::invalid_argument("sidon_distinct_mod: v must be >= 2");
    std::vector<char> seen(static_cast<std::size_t>(v), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) continue;
            const i64 d = mod(s[j] - s[i], v);
            if (d == 0 || seen[d]) return false;
            seen[d] = 1;
        }
    }
    return true;
}
inline bool sidon_distinct_mod(const SidonSet& s, i64 v) { return sidon_distinct_mod(s.elems(), v); }

/// True iff elems is a perfect difference set in Z_v.
inline bool verify_pds(const Elems& elems, i64 v) {
    const auto k = static_cast<i64>(elems.size());
    if (v < 1 || k * (k - 1) != v - 1) return false;
    std::vector<int> hits(static_cast<std::size_t>(v), 0);
    for (i64 a : elems)
        if (a < 0 || a >= v) return false;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j) ++hits[mod(elems[j] - elems[i], v)];
    if (hits[0] != 0) return false;
    for (i64 r = 1; r < v; ++r)
        if (hits[r] != 1) return false;
    return true;
}
inline bool verify_pds(const Pds& b) { return verify_pds(b.elems, b.v); }

inline SidonSet dilate(const SidonSet& s, i64 k) {
    if (k < 1) throw std::invalid_argument("dilate: k must be >= 1");
    Elems out = s.elems();
    for (auto& x : out) x *= k;
    return SidonSet(std::move(out));
}

/// {max(S) - s}
inline SidonSet reflect(const SidonSet& s) {
    Elems out = s.elems();
    for (auto& x : out) x = s.max() - x;
    return SidonSet(std::move(out));
}

/// Translate so the minimum is 0.
inline SidonSet normalize(const SidonSet& s) {
    if (s.empty()) throw std::invalid_argument("normalize: empty set");
    Elems out = s.elems();
    for (auto& x : out) x -= s.min();
    return SidonSet(std::move(out));
}

/// Sorted residues {a*x + b mod v}.
inline Elems affine_image(const Elems& xs, i64 a, i64 b, i64 v) {
    Elems out;
    out.reserve(xs.size());
    for (i64 x : xs) out.push_back(mod(mod(a, v) * mod(x, v) + b, v));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sidonpds
