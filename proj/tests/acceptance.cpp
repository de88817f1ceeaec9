// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// All comparisons are exact; the only tolerance is the DFS time budget below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "sidonpds/pipeline.hpp"

using namespace sidonpds;

namespace {

constexpr i64 kQMaxCandidates = 317;
constexpr i64 kQMaxDensity = 250;
constexpr i64 kQMaxControls = 128;
constexpr double kDfsBudgetSeconds = 60.0;  // per (S, v)

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

std::string set_str(const Elems& xs) { return SidonSet(xs).to_string(); }

Outcome hall_uniqueness() {
    Outcome o;
    const auto rows = hall_recheck({kHallRecheckModuli.begin(), kHallRecheckModuli.end()}, default_jobs());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& [v, expected] = golden::kPdsTotals[i];
        o.detail << " v=" << rows[i].v << ":" << rows[i].total << (rows[i].in_singer_orbit ? "/orbit" : "/NOT-orbit");
        o.require(rows[i].v == v && rows[i].total == expected, "v=" + std::to_string(v) + " expected " + std::to_string(expected));
        o.require(rows[i].in_singer_orbit, "v=" + std::to_string(v) + " has a PDS outside the Singer orbit");
    }
    return o;
}

Outcome density_table(const PdsTable& table) {
    Outcome o;
    for (const auto& [n, total, ext, non_ext] : golden::kDensity) {
        const auto res = enumerate_size4(n, kQMaxDensity, table, default_jobs());
        const auto& r = res.row;
        o.detail << " N=" << n << ":(" << r.total << "," << r.extending << "," << r.non_extending << ")";
        o.require(r.total == total && r.extending == ext && r.non_extending == non_ext,
                  "N=" + std::to_string(n) + " counts differ");
        const auto c = completeness_check(n, res.records);
        o.require(c.complete, "N=" + std::to_string(n) + " completeness: " + std::to_string(c.unexpected.size()) +
                                  " unexpected, " + std::to_string(c.missing.size()) + " missing");
    }
    return o;
}

Outcome candidates_method1(const PdsTable& table) {
    Outcome o;
    const auto all_q = prime_powers_in(3, kQMaxCandidates);
    for (const auto& c : base_candidates()) {
        const auto r = fast_check(c.set, kQMaxCandidates, table);
        o.detail << " " << c.label << ":" << (r.extends ? "extends" : "none") << "(" << r.checked.size() << "+"
                 << r.skipped.size() << ")";
        o.require(!r.extends, c.label + " extends at q=" + (r.witness ? std::to_string(r.witness->q) : "?"));
        o.require(r.checked.size() + r.skipped.size() == all_q.size(), c.label + " did not cover every prime power");
        bool q3 = false;
        for (const auto& [q, why] : r.skipped) {
            if (q == 3 && why.find("collision") != std::string::npos) q3 = true;
            o.require(why.find("collision") != std::string::npos, c.label + " unexpected skip at q=" + std::to_string(q));
        }
        o.require(q3, c.label + " q=3 not recorded as a collision skip");
    }
    return o;
}

Outcome candidates_method3() {
    Outcome o;
    std::vector<SidonSet> sets;
    for (const auto& c : base_candidates()) sets.push_back(c.set);
    const auto reports = independent_check(sets, 2, 11, DfsBudget{kDfsBudgetSeconds, std::nullopt}, default_jobs());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::size_t exhausted = 0;
        for (const auto& e : reports[i].entries) {
            exhausted += e.status == DfsStatus::Exhausted;
            o.require(e.status != DfsStatus::Timeout, base_candidates()[i].set.to_string() + " timeout at v=" + std::to_string(e.v));
            o.require(e.status != DfsStatus::Found, base_candidates()[i].set.to_string() + " extends at v=" + std::to_string(e.v));
            if (e.v == 43 || e.v == 91 || e.v == 111)
                o.require(e.status == DfsStatus::Exhausted, "v=" + std::to_string(e.v) + " not searched");
        }
        o.detail << " " << base_candidates()[i].label << ":" << exhausted << " exhausted";
    }
    return o;
}

Outcome dilation_family(const PdsTable& table) {
    Outcome o;
    const auto rows = dilation_family_check(10, kQMaxCandidates, table, default_jobs());
    std::size_t non_ext = 0;
    for (const auto& r : rows) {
        non_ext += !r.report.extends;
        o.require(!r.report.extends, r.candidate.label + " extends");
        o.require(is_sidon(r.candidate.set.elems()), r.candidate.label + " is not Sidon");
    }
    o.require(rows.size() == 40, "expected 40 sets");
    o.detail << " " << non_ext << "/" << rows.size() << " non-extending";
    return o;
}

Outcome superset_closure(const PdsTable& table) {
    Outcome o;
    for (const auto& [size, range, expected] : golden::kClosure) {
        const auto r = superset_closure_check(candidate_a(), static_cast<std::size_t>(size), range, kQMaxCandidates, table,
                                              default_jobs());
        o.detail << " size " << size << " in [0," << range << "]: " << r.count() << " supersets, "
                 << (r.all_non_extending() ? "all non-extending" : "some extend");
        o.require(static_cast<i64>(r.count()) == expected,
                  "size " + std::to_string(size) + ": expected " + std::to_string(expected) + ", got " + std::to_string(r.count()));
        o.require(r.all_non_extending() && r.violations.empty(), "closure violation at size " + std::to_string(size));
    }
    return o;
}

Outcome construction_agreement() {
    Outcome o;
    const auto qs = prime_powers_in(2, 64);
    for (i64 q : qs) {
        const auto t = singer_pds_trace(q);
        const auto r = singer_pds_recurrence(q, find_primitive_coeffs(q));
        const auto w = affine_equivalent(t.v, t.elems, r.elems);
        o.require(w && affine_image(t.elems, w->first, w->second, t.v) == r.elems, "q=" + std::to_string(q) + " differs");
    }
    o.detail << " " << qs.size() << " prime powers";
    return o;
}

Outcome controls(const PdsTable& table) {
    Outcome o;
    const SidonSet c19{0, 1, 3, 19};
    const auto r = fast_check(c19, kQMaxCandidates, table);
    o.require(r.extends && r.witness->q == 37, "{0, 1, 3, 19} first witness is not q=37");
    if (r.witness) {
        o.require(witness_valid(c19, *r.witness, *table(r.witness->q)), "witness does not verify");
        o.detail << " {0,1,3,19}: q=" << r.witness->q;
    }
    for (const SidonSet& s : {SidonSet{1, 2, 4, 8, 13}, SidonSet{1, 3, 9, 10, 13}}) {
        const auto x = fast_check(s, kQMaxControls, table);
        o.detail << " " << s.to_string() << ":" << (x.extends ? "extends q=" + std::to_string(x.witness->q) : "none");
        o.require(!x.extends, s.to_string() + " extends");
    }
    return o;
}

Outcome oracle_equivalence(const PdsTable& table) {
    Outcome o;
    std::size_t compared = 0;
    for (const auto& c : base_candidates())
        for (i64 q : prime_powers_in(2, 13)) {
            const bool fast = extends(fast_extends_at_q(c.set, q, *table(q)));
            const bool slow = extends(brute_force_at_q(c.set, q, *table(q)));
            o.require(fast == slow, c.label + " q=" + std::to_string(q) + " fast/brute disagree");
            ++compared;
        }
    o.detail << " fast~brute " << compared;

    // every Sidon 4-subset of [0, 20], not only the normalized ones
    std::size_t dfs_compared = 0;
    const auto base = sidon_sets_with_min_zero(20, 4);
    for (i64 q : {3, 4, 5}) {
        const i64 v = plane_modulus(q);
        std::vector<SidonSet> sets;
        for (const auto& s : base)
            for (i64 t = 0; s.max() + t <= 20; ++t) {
                Elems e = s.elems();
                for (auto& x : e) x += t;
                if (sidon_distinct_mod(e, v)) sets.emplace_back(e);
            }
        const auto agree = parallel_map<char>(sets.size(), default_jobs(), [&](std::size_t i) -> char {
            const bool fast = extends(fast_extends_at_q(sets[i], q, *table(q)));
            const auto d = find_pds_extension(sets[i], v, static_cast<std::size_t>(q + 1), DfsBudget{kDfsBudgetSeconds, std::nullopt});
            if (std::holds_alternative<Timeout>(d)) return 0;
            return fast == std::holds_alternative<Found>(d);
        });
        for (std::size_t i = 0; i < sets.size(); ++i)
            o.require(agree[i], sets[i].to_string() + " q=" + std::to_string(q) + " fast/DFS disagree");
        dfs_compared += sets.size();
    }
    o.detail << ", fast~dfs " << dfs_compared;
    return o;
}

bool field_axioms(u64 p, unsigned d) {
    const auto f = FieldCtx::make(p, d);
    const u64 n = f.order();
    std::vector<u64> add(n * n), mul(n * n);
    for (u64 x = 0; x < n; ++x)
        for (u64 y = 0; y < n; ++y) {
            add[x * n + y] = f.index_of(f.add(f.from_index(x), f.from_index(y)));
            mul[x * n + y] = f.index_of(f.mul(f.from_index(x), f.from_index(y)));
        }
    const u64 one = f.index_of(f.one());
    for (u64 x = 0; x < n; ++x) {
        if (add[x * n] != x || mul[x * n + one] != x) return false;
        bool has_neg = false, has_inv = x == 0;
        for (u64 y = 0; y < n; ++y) {
            has_neg |= add[x * n + y] == 0;
            has_inv |= mul[x * n + y] == one;
            if (add[x * n + y] != add[y * n + x] || mul[x * n + y] != mul[y * n + x]) return false;
            for (u64 z = 0; z < n; ++z) {
                if (add[add[x * n + y] * n + z] != add[x * n + add[y * n + z]]) return false;
                if (mul[mul[x * n + y] * n + z] != mul[x * n + mul[y * n + z]]) return false;
                if (mul[x * n + add[y * n + z]] != add[mul[x * n + y] * n + mul[x * n + z]]) return false;
            }
        }
        if (!has_neg || !has_inv) return false;
    }
    return true;
}

Outcome invariant_suites(const PdsTable& table) {
    Outcome o;
    for (auto [p, d] : {std::pair<u64, unsigned>{2, 2}, {2, 3}, {3, 2}})
        o.require(field_axioms(p, d), "field axioms fail for GF(" + std::to_string(ipow(p, d)) + ")");

    // verify_pds <=> all differences distinct, over every k-subset with k(k-1) = v-1
    std::size_t subsets = 0;
    for (auto [v, k] : {std::pair<i64, std::size_t>{3, 2}, {7, 3}, {13, 4}, {21, 5}, {31, 6}}) {
        Elems cur;
        auto rec = [&](auto&& self, i64 from) -> void {
            if (cur.size() == k) {
                ++subsets;
                if (verify_pds(cur, v) != sidon_distinct_mod(cur, v)) o.require(false, "verify_pds mismatch on " + set_str(cur));
                return;
            }
            for (i64 x = from; x < v; ++x) {
                cur.push_back(x);
                self(self, x + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
    }
    o.detail << " fields ok, " << subsets << " subsets";

    // reflection and coprime dilation verdict symmetry, per q
    std::size_t checks = 0;
    const auto qs = prime_powers_in(3, 64);
    for (const auto& s : sidon_sets_with_min_zero(20, 4)) {
        const auto r = reflect(s);
        for (i64 q : qs) {
            const bool base = extends(fast_extends_at_q(s, q, *table(q), table.index(q)));
            const bool refl = extends(fast_extends_at_q(r, q, *table(q), table.index(q)));
            if (base != refl) o.require(false, "reflection asymmetry " + s.to_string() + " q=" + std::to_string(q));
            for (i64 k : {2, 3, 5}) {
                const auto ks = dilate(s, k);
                const auto out = fast_extends_at_q(ks, q, *table(q), table.index(q));
                if (const auto* e = std::get_if<Extends>(&out))
                    if (!witness_valid(ks, e->witness, *table(q))) o.require(false, "unsound witness " + ks.to_string());
                if (std::gcd(k, plane_modulus(q)) == 1 && extends(out) != base)
                    o.require(false, "dilation asymmetry " + s.to_string() + " k=" + std::to_string(k) + " q=" + std::to_string(q));
                ++checks;
            }
        }
    }
    o.detail << ", " << checks << " symmetry checks";
    return o;
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path root = fs::temp_directory_path() / ("sidonpds_acceptance_" + std::to_string(std::random_device{}()));
    const PdsCache cache(root);
    cache.build_pds_cache(kQMaxCandidates, default_jobs());
    const PdsTable table = cache.load_table(kQMaxCandidates);
    std::cerr << "cache: " << table.size() << " PDSs built under " << root << "\n";

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Hall-uniqueness re-check (v = 13, 21, 31, 73)", hall_uniqueness},
        {"density table N = 20..50 at q_max 250 + completeness", [&] { return density_table(table); }},
        {"candidates non-extending by orbit check, q <= 317", [&] { return candidates_method1(table); }},
        {"candidates exhausted by DFS, q in [2, 11]", candidates_method3},
        {"dilation family k <= 10 non-extending, q <= 317", [&] { return dilation_family(table); }},
        {"superset closure counts of A (16 at size 5, 30 at size 6)", [&] { return superset_closure(table); }},
        {"trace-zero vs recurrence constructions, q <= 64", construction_agreement},
        {"controls: {0,1,3,19} at q=37; size-5 sets non-extending q <= 128", [&] { return controls(table); }},
        {"fast check vs brute force and vs DFS", [&] { return oracle_equivalence(table); }},
        {"invariants: field axioms, verify_pds, verdict symmetries", [&] { return invariant_suites(table); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto c0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
        failed += !o.pass;
        std::printf("%s criterion %zu: %s:%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%zu/%zu criteria passed in %.1f s\n", criteria.size() - failed, criteria.size(), total);
    return failed ? 1 : 0;
}
