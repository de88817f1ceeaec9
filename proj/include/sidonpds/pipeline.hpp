#pragma once

// Experiment drivers: triple verification of the size-4 candidates, the dilation
// family scan, size-k density enumeration, superset closure and the sub-pattern
// novelty check. All drivers take a PDS source (q -> Pds, null when absent) and return
// results in input order regardless of the number of worker threads.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cache_store.hpp"
#include "dfs_search.hpp"
#include "orbit_check.hpp"
#include "parallel.hpp"
#include "singer.hpp"

namespace sidonpds {

struct Candidate {
    SidonSet set;
    std::string label;
};

inline SidonSet candidate_a() { return SidonSet{0, 1, 3, 11}; }
inline SidonSet candidate_b() { return SidonSet{0, 1, 4, 11}; }

/// A, B, refl(A), refl(B)
inline std::vector<Candidate> base_candidates() {
    return {{candidate_a(), "A"}, {candidate_b(), "B"}, {reflect(candidate_a()), "refl(A)"}, {reflect(candidate_b()), "refl(B)"}};
}

/// The four members of the dilation family at scale k.
inline std::vector<Candidate> family_at(i64 k) {
    const std::string ks = std::to_string(k);
    return {{dilate(candidate_a(), k), ks + "A"},
            {dilate(reflect(candidate_a()), k), "refl(" + ks + "A)"},
            {dilate(candidate_b(), k), ks + "B"},
            {dilate(reflect(candidate_b()), k), "refl(" + ks + "B)"}};
}

struct FamilyMatch {
    std::string label;
    i64 k = 0;
};

/// Is normalize(T) equal to k*F for F in {A, refl(A), B, refl(B)} and some k >= 1?
inline std::optional<FamilyMatch> family_match(const SidonSet& t) {
    const SidonSet n = normalize(t);
    if (n.size() != 4 || n.max() % 11 != 0) return std::nullopt;
    const i64 k = n.max() / 11;
    for (const auto& c : family_at(k))
        if (c.set == n) return FamilyMatch{c.label, k};
    return std::nullopt;
}

// --- triple verification ---------------------------------------------------

/// Moduli re-checked by full enumeration: every PDS must lie in the Singer orbit.
inline constexpr std::array<i64, 4> kHallRecheckModuli{13, 21, 31, 73};

struct HallRecheck {
    i64 v = 0;
    i64 total = 0;
    bool in_singer_orbit = false;
};

inline std::vector<HallRecheck> hall_recheck(const std::vector<i64>& moduli = {kHallRecheckModuli.begin(), kHallRecheckModuli.end()},
                                             unsigned jobs = 1) {
    return parallel_map<HallRecheck>(moduli.size(), jobs, [&](std::size_t i) {
        const i64 v = moduli[i];
        const auto all = enumerate_all_pds(v, true);
        return HallRecheck{v, all.total, all_in_singer_orbit(v, all.containing_zero, singer_pds_trace(all.q))};
    });
}

/// Orbit verdict vs exhaustive DFS verdict at one q.
struct AgreementEntry {
    i64 q = 0;
    i64 v = 0;
    bool applicable = false;  // false when S collides mod v or does not fit
    bool orbit_extends = false;
    DfsStatus dfs = DfsStatus::Exhausted;

    bool agrees() const {
        if (!applicable) return true;
        if (dfs == DfsStatus::Timeout) return false;
        return orbit_extends == (dfs == DfsStatus::Found);
    }
};

enum class Verdict { NonExtending, Extends, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::NonExtending: return "NON-EXTENDING";
        case Verdict::Extends: return "EXTENDS";
        default: return "INCONCLUSIVE";
    }
}

struct TripleVerdict {
    Candidate candidate;
    CheckReport method1;
    std::vector<AgreementEntry> method2;
    IndependentReport method3;

    bool method2_agree() const {
        for (const auto& e : method2)
            if (!e.agrees()) return false;
        return true;
    }
    bool method2_extends() const {
        for (const auto& e : method2)
            if (e.applicable && (e.orbit_extends || e.dfs == DfsStatus::Found)) return true;
        return false;
    }
    /// Non-extending only when every method concurs; any witness means extends.
    Verdict verdict() const {
        if (method1.extends || method2_extends() || method3.any_extends()) return Verdict::Extends;
        if (method2_agree() && method3.no_extension()) return Verdict::NonExtending;
        return Verdict::Inconclusive;
    }
};

struct TripleVerifyResult {
    std::vector<HallRecheck> hall;
    std::vector<TripleVerdict> verdicts;

    bool hall_ok() const {
        for (const auto& h : hall)
            if (!h.in_singer_orbit) return false;
        return true;
    }
};

struct TripleVerifyConfig {
    i64 q_max_fast = 64;
    i64 dfs_q_lo = 2;
    i64 dfs_q_hi = 11;
    DfsBudget budget{};
    unsigned jobs = 1;
    bool hall = true;  // run the full enumerations (v = 73 takes a few seconds)
};

template <class Source>
AgreementEntry orbit_vs_dfs(const SidonSet& s, i64 q, const Source& source, const DfsBudget& budget) {
    AgreementEntry e;
    e.q = q;
    e.v = plane_modulus(q);
    if (static_cast<i64>(s.size()) > q + 1 || !sidon_distinct_mod(s, e.v)) return e;
    const auto b = source(q);
    if (!b) throw std::runtime_error("no cached PDS for q=" + std::to_string(q));
    e.applicable = true;
    e.orbit_extends = extends(fast_extends_at_q(s, q, *b));
    const auto o = find_pds_extension(s, e.v, static_cast<std::size_t>(q + 1), budget);
    e.dfs = std::holds_alternative<Found>(o) ? DfsStatus::Found
            : std::holds_alternative<Exhausted>(o) ? DfsStatus::Exhausted
                                                   : DfsStatus::Timeout;
    return e;
}

/// Methods 1-3 for each candidate: orbit scan to q_max_fast, orbit-vs-exhaustive
/// agreement at the Hall re-check orders, and unconditional DFS over [dfs_q_lo, dfs_q_hi].
template <class Source>
TripleVerifyResult triple_verify(const std::vector<Candidate>& candidates, const Source& source,
                                 const TripleVerifyConfig& cfg = {}) {
    for (i64 q : prime_powers_in(2, cfg.q_max_fast))
        if (!source(q)) throw std::runtime_error("missing cached PDS for q=" + std::to_string(q));

    TripleVerifyResult out;
    if (cfg.hall) out.hall = hall_recheck({kHallRecheckModuli.begin(), kHallRecheckModuli.end()}, cfg.jobs);

    std::vector<SidonSet> sets;
    for (const auto& c : candidates) sets.push_back(c.set);
    auto m3 = independent_check(sets, cfg.dfs_q_lo, cfg.dfs_q_hi, cfg.budget, cfg.jobs);
    auto m1 = parallel_map<CheckReport>(candidates.size(), cfg.jobs,
                                        [&](std::size_t i) { return fast_check(candidates[i].set, cfg.q_max_fast, source); });

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        TripleVerdict t{candidates[i], std::move(m1[i]), {}, std::move(m3[i])};
        for (i64 v : kHallRecheckModuli) {
            const i64 q = *plane_order(v);
            if (q <= cfg.q_max_fast) t.method2.push_back(orbit_vs_dfs(candidates[i].set, q, source, cfg.budget));
        }
        out.verdicts.push_back(std::move(t));
    }
    return out;
}

// --- dilation family -------------------------------------------------------

struct FamilyRow {
    i64 k = 0;
    Candidate candidate;
    CheckReport report;
};

template <class Source>
std::vector<FamilyRow> dilation_family_check(i64 k_max, i64 q_max, const Source& source, unsigned jobs = 1) {
    std::vector<FamilyRow> rows;
    for (i64 k = 1; k <= k_max; ++k)
        for (auto& c : family_at(k)) rows.push_back({k, std::move(c), {}});
    auto reports = parallel_map<CheckReport>(rows.size(), jobs,
                                             [&](std::size_t i) { return fast_check(rows[i].candidate.set, q_max, source); });
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].report = std::move(reports[i]);
    return rows;
}

// --- density enumeration ---------------------------------------------------

struct DensityRow {
    i64 n_max = 0;
    i64 total = 0;
    i64 extending = 0;
    i64 non_extending = 0;
    i64 predicted = 0;  // 4 * floor(N / 11)

    friend bool operator==(const DensityRow&, const DensityRow&) = default;
};

/// All Sidon sets {0 < a < b < ...} of the given size with max <= n_max, lexicographic.
inline std::vector<SidonSet> sidon_sets_with_min_zero(i64 n_max, std::size_t size) {
    std::vector<SidonSet> out;
    if (size == 0) return out;
    Elems cur{0};
    std::vector<char> used(static_cast<std::size_t>(n_max) + 1, 0);
    auto rec = [&](auto&& self, i64 from) -> void {
        if (cur.size() == size) {
            out.emplace_back(cur);
            return;
        }
        for (i64 x = from; x <= n_max; ++x) {
            bool ok = true;
            std::size_t marked = 0;
            for (; marked < cur.size(); ++marked) {
                const i64 d = x - cur[marked];
                if (used[d]) {
                    ok = false;
                    break;
                }
                used[d] = 1;
            }
            if (ok) {
                cur.push_back(x);
                self(self, x + 1);
                cur.pop_back();
            }
            for (std::size_t i = 0; i < marked; ++i) used[x - cur[i]] = 0;
        }
    };
    rec(rec, 1);
    return out;
}

inline EnumerationRecord to_record(const SidonSet& s, const CheckReport& r, i64 q_max) {
    EnumerationRecord rec;
    rec.set = s.elems();
    rec.extends = r.extends;
    if (r.witness) rec.q_witness = r.witness->q;
    rec.q_max = q_max;
    rec.skips = r.skipped;
    return rec;
}

struct DensityResult {
    DensityRow row;
    std::vector<EnumerationRecord> records;
};

/// Classify every min-0 Sidon set of the given size in [0, n_max] by fast_check(., q_max).
template <class Source>
DensityResult enumerate_sidon(i64 n_max, std::size_t size, i64 q_max, const Source& source, unsigned jobs = 1) {
    const auto sets = sidon_sets_with_min_zero(n_max, size);
    DensityResult out;
    out.records = parallel_map<EnumerationRecord>(sets.size(), jobs, [&](std::size_t i) {
        return to_record(sets[i], fast_check(sets[i], q_max, source), q_max);
    });
    out.row.n_max = n_max;
    out.row.total = static_cast<i64>(sets.size());
    for (const auto& r : out.records) (r.extends ? out.row.extending : out.row.non_extending)++;
    out.row.predicted = 4 * (n_max / 11);
    return out;
}

template <class Source>
DensityResult enumerate_size4(i64 n_max, i64 q_max, const Source& source, unsigned jobs = 1) {
    return enumerate_sidon(n_max, 4, q_max, source, jobs);
}

struct CompletenessResult {
    bool complete = false;
    std::vector<Elems> unexpected;  // non-extending but outside the family
    std::vector<Elems> missing;     // family members not classified non-extending
};

/// Non-extending records == {kA, refl(kA), kB, refl(kB) : 1 <= k <= N/11}, as normalized sets.
inline CompletenessResult completeness_check(i64 n_max, const std::vector<EnumerationRecord>& records) {
    std::set<Elems> expected;
    for (i64 k = 1; k <= n_max / 11; ++k)
        for (const auto& c : family_at(k)) expected.insert(c.set.elems());
    std::set<Elems> found;
    for (const auto& r : records)
        if (!r.extends) found.insert(normalize(SidonSet(r.set)).elems());

    CompletenessResult out;
    for (const auto& s : found)
        if (!expected.count(s)) out.unexpected.push_back(s);
    for (const auto& s : expected)
        if (!found.count(s)) out.missing.push_back(s);
    out.complete = out.unexpected.empty() && out.missing.empty();
    return out;
}

// --- superset closure ------------------------------------------------------

struct ClosureReport {
    SidonSet base;
    CheckReport base_report;
    bool precondition_met = false;  // base classified non-extending
    std::vector<std::pair<SidonSet, CheckReport>> supersets;
    std::vector<SidonSet> violations;  // extending supersets of a non-extending base

    std::size_t count() const { return supersets.size(); }
    bool all_non_extending() const {
        for (const auto& [s, r] : supersets)
            if (r.extends) return false;
        return true;
    }
};

/// Sidon supersets of s with target_size elements, all in [0, range_max], lexicographic.
inline std::vector<SidonSet> sidon_supersets(const SidonSet& s, std::size_t target_size, i64 range_max) {
    std::vector<SidonSet> out;
    if (target_size < s.size()) return out;
    Elems cur = s.elems();
    auto rec = [&](auto&& self, i64 from) -> void {
        if (cur.size() == target_size) {
            out.emplace_back(cur);
            return;
        }
        for (i64 x = from; x <= range_max; ++x) {
            if (std::find(s.begin(), s.end(), x) != s.end()) continue;
            cur.push_back(x);
            if (is_sidon(cur)) self(self, x + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

template <class Source>
ClosureReport superset_closure_check(const SidonSet& s, std::size_t target_size, i64 range_max, i64 q_max,
                                     const Source& source, unsigned jobs = 1) {
    ClosureReport out;
    out.base = s;
    out.base_report = fast_check(s, q_max, source);
    out.precondition_met = !out.base_report.extends;
    const auto sups = sidon_supersets(s, target_size, range_max);
    auto reports = parallel_map<CheckReport>(sups.size(), jobs, [&](std::size_t i) { return fast_check(sups[i], q_max, source); });
    for (std::size_t i = 0; i < sups.size(); ++i) {
        if (out.precondition_met && reports[i].extends) out.violations.push_back(sups[i]);
        out.supersets.emplace_back(sups[i], std::move(reports[i]));
    }
    return out;
}

// --- sub-pattern novelty ---------------------------------------------------

struct SubPattern {
    SidonSet source;
    SidonSet pattern;  // normalized 4-subset
    std::optional<FamilyMatch> match;
};

struct SubPatternReport {
    std::vector<SubPattern> patterns;
    bool novel() const {
        for (const auto& p : patterns)
            if (p.match) return false;
        return true;
    }
};

/// Normalized 4-subsets of the given sets, each tested against the kA/kB family.
inline SubPatternReport sub_pattern_check(const std::vector<SidonSet>& sources = {SidonSet{1, 2, 4, 8, 13},
                                                                                SidonSet{1, 3, 9, 10, 13}}) {
    SubPatternReport out;
    for (const auto& src : sources) {
        const auto n = src.size();
        for (std::size_t skip = n; skip-- > 0;) {
            Elems sub;
            for (std::size_t i = 0; i < n; ++i)
                if (i != skip) sub.push_back(src[i]);
            const SidonSet pat = normalize(SidonSet(sub));
            out.patterns.push_back({src, pat, family_match(pat)});
        }
    }
    return out;
}

// --- reference values ------------------------------------------------------

namespace golden {

/// Size-4 density table at q_max = 250: (N, total, extending, non-extending).
inline constexpr std::array<std::array<i64, 4>, 4> kDensity{{
    {20, 802, 798, 4},
    {30, 3254, 3246, 8},
    {40, 8406, 8394, 12},
    {50, 17256, 17240, 16},
}};

/// Total PDS counts from full enumeration: (v, total).
inline constexpr std::array<std::array<i64, 2>, 4> kPdsTotals{{{13, 52}, {21, 42}, {31, 310}, {73, 584}}};

/// Superset closure of A: (size, range, count).
inline constexpr std::array<std::array<i64, 3>, 2> kClosure{{{5, 30, 16}, {6, 50, 30}}};

inline std::optional<std::array<i64, 4>> density_row(i64 n_max) {
    for (const auto& r : kDensity)
        if (r[0] == n_max) return r;
    return std::nullopt;
}

}  // namespace golden

}  // namespace sidonpds
