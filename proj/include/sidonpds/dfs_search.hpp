#pragma once

// Unconditional depth-first search for perfect difference sets in Z_v.
//
// State is a used-difference table over Z_v. Adding x to a partial set P marks
// +-(x - p) for every p in P and prunes on any collision. At exact cardinality
// n(n-1) = v-1, a full leaf with all differences distinct is a PDS. Non-seed
// elements are added in increasing residue order, so every superset is reached
// exactly once.

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "parallel.hpp"
#include "sidon_core.hpp"
#include "singer.hpp"

namespace sidonpds {

struct DfsBudget {
    double time_limit_s = 60.0;
    std::optional<u64> node_limit;
};

struct Found {
    Pds pds;
    u64 nodes = 0;
};
struct Exhausted {
    double elapsed_s = 0;
    u64 nodes = 0;
};
struct Timeout {
    double elapsed_s = 0;
    u64 nodes = 0;
};

using DfsOutcome = std::variant<Found, Exhausted, Timeout>;

/// q with q^2 + q + 1 == v, if any.
inline std::optional<i64> plane_order(i64 v) {
    for (i64 q = 1; plane_modulus(q) <= v; ++q)
        if (plane_modulus(q) == v) return q;
    return std::nullopt;
}

namespace detail {

class PdsSearcher {
public:
    using Clock = std::chrono::steady_clock;

    PdsSearcher(i64 v, std::size_t n, const DfsBudget& budget)
        : v_(v), n_(n), budget_(budget), used_(static_cast<std::size_t>(v), 0), member_(static_cast<std::size_t>(v), 0),
          start_(Clock::now()) {
        chosen_.reserve(n);
    }

    /// Seeds must be distinct residues with pairwise distinct differences.
    bool place_seed(i64 x) { return try_push(x); }

    /// Visit every completion; `on_leaf` returns false to stop the search.
    template <class OnLeaf>
    void run(OnLeaf&& on_leaf) {
        descend(0, on_leaf);
    }

    bool aborted() const { return aborted_; }
    bool stopped() const { return stopped_; }
    u64 nodes() const { return nodes_; }
    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
    const Elems& chosen() const { return chosen_; }

private:
    // Add x and mark its differences against the current set; roll back on collision.
    bool try_push(i64 x) {
        if (member_[x]) return false;
        std::size_t marked = 0;
        for (; marked < chosen_.size(); ++marked) {
            const i64 d = mod(x - chosen_[marked], v_);
            if (used_[d] || used_[v_ - d] || d == v_ - d) break;
            used_[d] = used_[v_ - d] = 1;
        }
        if (marked < chosen_.size()) {
            for (std::size_t i = 0; i < marked; ++i) {
                const i64 d = mod(x - chosen_[i], v_);
                used_[d] = used_[v_ - d] = 0;
            }
            return false;
        }
        member_[x] = 1;
        chosen_.push_back(x);
        return true;
    }
    void pop() {
        const i64 x = chosen_.back();
        chosen_.pop_back();
        member_[x] = 0;
        for (i64 p : chosen_) {
            const i64 d = mod(x - p, v_);
            used_[d] = used_[v_ - d] = 0;
        }
    }

    bool over_budget() {
        if (budget_.node_limit && nodes_ >= *budget_.node_limit) return true;
        if ((nodes_ & 0xFFF) == 0 && elapsed() > budget_.time_limit_s) return true;
        return false;
    }

    template <class OnLeaf>
    void descend(i64 from, OnLeaf& on_leaf) {
        if (stopped_ || aborted_) return;
        const auto slots = static_cast<i64>(n_ - chosen_.size());
        if (slots == 0) {
            if (!on_leaf(chosen_)) stopped_ = true;
            return;
        }
        ++nodes_;
        if (over_budget()) {
            aborted_ = true;
            return;
        }
        // residues left must cover the remaining slots
        for (i64 x = from; x <= v_ - slots; ++x) {
            if (!try_push(x)) continue;
            descend(x + 1, on_leaf);
            pop();
            if (stopped_ || aborted_) return;
        }
    }

    i64 v_;
    std::size_t n_;
    DfsBudget budget_;
    std::vector<char> used_;
    std::vector<char> member_;
    Elems chosen_;
    Clock::time_point start_;
    u64 nodes_ = 0;
    bool aborted_ = false;
    bool stopped_ = false;
};

}  // namespace detail

/// Search for a PDS of size n in Z_v containing S mod v.
inline DfsOutcome find_pds_extension(const Elems& seed, i64 v, std::size_t n, const DfsBudget& budget = {}) {
    if (static_cast<i64>(n * (n - 1)) != v - 1)
        throw std::invalid_argument("find_pds_extension: n(n-1) != v-1 for v=" + std::to_string(v) + ", n=" + std::to_string(n));
    if (budget.time_limit_s <= 0) throw std::invalid_argument("find_pds_extension: time limit must be positive");
    if (seed.size() > n) throw std::invalid_argument("find_pds_extension: seed larger than target size");
    if (!sidon_distinct_mod(seed, v))
        throw std::invalid_argument("find_pds_extension: seed has colliding differences mod " + std::to_string(v));

    detail::PdsSearcher search(v, n, budget);
    for (i64 x : seed)
        if (!search.place_seed(mod(x, v))) throw std::logic_error("find_pds_extension: seed placement failed");

    std::optional<Pds> found;
    search.run([&](const Elems& full) {
        Elems b = full;
        std::sort(b.begin(), b.end());
        found = Pds{v, std::move(b)};
        return false;
    });
    if (found) {
        if (!verify_pds(*found)) throw std::logic_error("find_pds_extension: leaf failed verify_pds");
        return Found{*found, search.nodes()};
    }
    if (search.aborted()) return Timeout{search.elapsed(), search.nodes()};
    return Exhausted{search.elapsed(), search.nodes()};
}

inline DfsOutcome find_pds_extension(const SidonSet& s, i64 v, std::size_t n, const DfsBudget& budget = {}) {
    return find_pds_extension(s.elems(), v, n, budget);
}

struct PdsEnumeration {
    i64 v = 0;
    i64 q = 0;
    std::vector<Elems> containing_zero;  // every PDS with 0 in it, sorted lexicographically
    i64 total = 0;                       // all PDSs in Z_v
};

/// Every PDS in Z_v, v = q^2 + q + 1. Each PDS has q + 1 translates through 0 and
/// v distinct translates, so total = |containing_zero| * v / (q + 1).
inline PdsEnumeration enumerate_all_pds(i64 v, bool force = false) {
    const auto q = plane_order(v);
    if (!q || *q < 1) throw std::invalid_argument("enumerate_all_pds: v=" + std::to_string(v) + " is not q^2+q+1");
    if (v > 73 && !force) throw std::invalid_argument("enumerate_all_pds: v > 73 needs force");
    const auto n = static_cast<std::size_t>(*q + 1);

    PdsEnumeration out{v, *q, {}, 0};
    detail::PdsSearcher search(v, n, DfsBudget{1e12, std::nullopt});
    search.place_seed(0);
    search.run([&](const Elems& full) {
        out.containing_zero.push_back(full);
        return true;
    });
    const auto count = static_cast<i64>(out.containing_zero.size());
    if ((count * v) % static_cast<i64>(n) != 0) throw std::logic_error("enumerate_all_pds: counting identity violated");
    out.total = count * v / static_cast<i64>(n);
    return out;
}

inline bool all_in_singer_orbit(i64 v, const std::vector<Elems>& all_pds, const SingerPds& singer) {
    if (singer.v != v) return false;
    for (const auto& b : all_pds)
        if (!affine_equivalent(v, singer.elems, b)) return false;
    return true;
}

enum class DfsStatus { Found, Exhausted, Timeout, SkippedCollision, SkippedTooBig };

inline const char* to_string(DfsStatus s) {
    switch (s) {
        case DfsStatus::Found: return "EXTENDS";
        case DfsStatus::Exhausted: return "exhausted";
        case DfsStatus::Timeout: return "timeout";
        case DfsStatus::SkippedCollision: return "skipped (collision)";
        default: return "skipped (|S| > q+1)";
    }
}

struct IndependentEntry {
    i64 q = 0;
    i64 v = 0;
    DfsStatus status = DfsStatus::Exhausted;
    std::optional<Pds> extension;
    double elapsed_s = 0;
    u64 nodes = 0;
};

struct IndependentReport {
    SidonSet candidate;
    std::vector<IndependentEntry> entries;

    bool any_extends() const {
        for (const auto& e : entries)
            if (e.status == DfsStatus::Found) return true;
        return false;
    }
    bool any_timeout() const {
        for (const auto& e : entries)
            if (e.status == DfsStatus::Timeout) return true;
        return false;
    }
    /// Proven non-extension: every applicable v exhausted.
    bool no_extension() const { return !any_extends() && !any_timeout(); }
};

/// DFS for every candidate and every q in [q_lo, q_hi] (prime power or not).
inline std::vector<IndependentReport> independent_check(const std::vector<SidonSet>& candidates, i64 q_lo, i64 q_hi,
                                                        const DfsBudget& budget = {}, unsigned jobs = 1) {
    if (q_lo < 1 || q_hi < q_lo) throw std::invalid_argument("independent_check: bad q range");
    struct Task {
        std::size_t cand;
        i64 q;
    };
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < candidates.size(); ++c)
        for (i64 q = q_lo; q <= q_hi; ++q) tasks.push_back({c, q});

    auto entries = parallel_map<IndependentEntry>(tasks.size(), jobs, [&](std::size_t i) {
        const auto& [c, q] = tasks[i];
        const SidonSet& s = candidates[c];
        IndependentEntry e;
        e.q = q;
        e.v = plane_modulus(q);
        if (static_cast<i64>(s.size()) > q + 1) {
            e.status = DfsStatus::SkippedTooBig;
            return e;
        }
        if (!sidon_distinct_mod(s, e.v)) {
            e.status = DfsStatus::SkippedCollision;
            return e;
        }
        const DfsOutcome o = find_pds_extension(s, e.v, static_cast<std::size_t>(q + 1), budget);
        if (const auto* f = std::get_if<Found>(&o)) {
            e.status = DfsStatus::Found;
            e.extension = f->pds;
            e.nodes = f->nodes;
        } else if (const auto* x = std::get_if<Exhausted>(&o)) {
            e.status = DfsStatus::Exhausted;
            e.elapsed_s = x->elapsed_s;
            e.nodes = x->nodes;
        } else {
            const auto& t = std::get<Timeout>(o);
            e.status = DfsStatus::Timeout;
            e.elapsed_s = t.elapsed_s;
            e.nodes = t.nodes;
        }
        return e;
    });

    std::vector<IndependentReport> out;
    for (const auto& s : candidates) out.push_back({s, {}});
    for (std::size_t i = 0; i < tasks.size(); ++i) out[tasks[i].cand].entries.push_back(std::move(entries[i]));
    return out;
}

}  // namespace sidonpds
