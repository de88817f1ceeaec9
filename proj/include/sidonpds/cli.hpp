#pragma once

// Multi-command front end. Machine output (tables, JSON, JSONL paths) goes to `out`
// and is byte-stable across runs; progress and timings go to `err`.
//
// Exit codes: 0 ok, 1 golden mismatch under --check, 2 usage error or missing cache.

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pipeline.hpp"

namespace sidonpds::cli {

inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "0,1,3,11", "{0, 1, 3, 11}" or "0 1 3 11". Elements must be non-negative.
inline SidonSet parse_set(const std::string& text) {
    std::string t = text;
    for (char& c : t)
        if (c == ',' || c == '{' || c == '}' || c == '[' || c == ']') c = ' ';
    std::istringstream in(t);
    Elems xs;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw UsageError("not an integer: '" + tok + "' in set '" + text + "'");
        xs.push_back(x);
    }
    if (xs.empty()) throw UsageError("empty set '" + text + "'");
    if (sorted_unique(xs).size() != xs.size()) throw UsageError("repeated element in '" + text + "'");
    if (!is_sidon(xs)) throw UsageError("'" + text + "' is not a Sidon set");
    return SidonSet(xs);
}

inline std::string join(const Elems& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s + "]";
}

struct Globals {
    std::string data_root;
    double budget_s = 60.0;
    unsigned jobs = default_jobs();
    bool check = false;
    bool verbose = false;
};

class Runner {
public:
    Runner(const Globals& g, std::ostream& out, std::ostream& err) : g_(g), cache_(g.data_root), out_(out), err_(err) {}

    int build_cache(i64 q_max) {
        const auto t0 = Clock::now();
        const auto s = cache_.build_pds_cache(q_max, g_.jobs, [&](i64 q, bool built) {
            if (g_.verbose) err_ << "q=" << q << (built ? ": built" : ": cached") << "\n";
        });
        err_ << "build-cache: " << s.built << " built, " << s.reused << " reused in " << since(t0) << " s\n";
        out_ << "pds_cache " << cache_.pds_dir().string() << " q_max=" << q_max << " entries=" << s.qs.size() << "\n";
        return kOk;
    }

    int triple_verify(i64 q_max, i64 q_lo, i64 q_hi, bool hall) {
        const auto table = load(q_max);
        TripleVerifyConfig cfg;
        cfg.q_max_fast = q_max;
        cfg.dfs_q_lo = q_lo;
        cfg.dfs_q_hi = q_hi;
        cfg.budget = budget();
        cfg.jobs = g_.jobs;
        cfg.hall = hall;
        const auto t0 = Clock::now();
        const auto res = sidonpds::triple_verify(base_candidates(), table, cfg);
        err_ << "triple-verify: " << since(t0) << " s\n";

        bool ok = true;
        for (const auto& h : res.hall) {
            out_ << "hall v=" << h.v << " total=" << h.total << " singer_orbit=" << (h.in_singer_orbit ? "yes" : "no") << "\n";
            for (const auto& [v, total] : golden::kPdsTotals)
                if (v == h.v && total != h.total) ok = false;
            ok = ok && h.in_singer_orbit;
        }
        for (const auto& t : res.verdicts) {
            out_ << "candidate " << t.candidate.label << " " << t.candidate.set.to_string() << "\n";
            out_ << "  method1 fast_check q<=" << q_max << ": " << (t.method1.extends ? "extends" : "no extension")
                 << " (checked " << t.method1.checked.size() << ", skipped " << t.method1.skipped.size() << ")\n";
            for (const auto& [q, why] : t.method1.skipped) out_ << "    skip q=" << q << ": " << why << "\n";
            for (const auto& e : t.method2) {
                out_ << "  method2 q=" << e.q << " v=" << e.v << ": ";
                if (!e.applicable)
                    out_ << "n/a\n";
                else
                    out_ << "orbit=" << (e.orbit_extends ? "extends" : "none") << " dfs=" << to_string(e.dfs)
                         << (e.agrees() ? " agree" : " DISAGREE") << "\n";
            }
            out_ << "  method3 dfs q=" << q_lo << ".." << q_hi << ":";
            for (const auto& e : t.method3.entries) out_ << " " << e.q << "=" << short_status(e.status);
            out_ << "\n  verdict " << to_string(t.verdict()) << "\n";
            if (g_.verbose) log_entries(t.method3);
            ok = ok && t.verdict() == Verdict::NonExtending;
        }
        return finish(ok);
    }

    int independent_check(i64 q_lo, i64 q_hi) {
        std::vector<SidonSet> sets;
        for (const auto& c : base_candidates()) sets.push_back(c.set);
        const auto reports = sidonpds::independent_check(sets, q_lo, q_hi, budget(), g_.jobs);
        bool ok = true;
        const auto cands = base_candidates();
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            out_ << "candidate " << cands[i].label << " " << r.candidate.to_string() << "\n";
            for (const auto& e : r.entries) {
                out_ << "  q=" << e.q << ", v=" << e.v << ": " << to_string(e.status);
                if (e.extension) out_ << " " << join(e.extension->elems);
                out_ << "\n";
                if (g_.verbose && (e.status == DfsStatus::Exhausted || e.status == DfsStatus::Timeout))
                    err_ << r.candidate.to_string() << " q=" << e.q << ": " << e.nodes << " nodes, " << e.elapsed_s << " s\n";
            }
            const char* summary = r.any_extends() ? "EXTENDS" : r.any_timeout() ? "INCONCLUSIVE (timeout)" : "NO extension";
            out_ << "  result: " << summary << "\n";
            ok = ok && r.no_extension();
        }
        return finish(ok);
    }

    int enumerate(i64 n_max, std::size_t size, i64 q_max) {
        const auto table = load(q_max);
        const auto t0 = Clock::now();
        const auto res = enumerate_sidon(n_max, size, q_max, table, g_.jobs);
        const auto path = cache_.enumeration_path(n_max, size, q_max);
        write_enumeration(res.records, path);
        err_ << "enumerate: " << res.row.total << " sets in " << since(t0) << " s\n";
        out_ << "records " << path.string() << "\n";
        print_density_header(size);
        print_density_row(res.row, size);
        if (size != 4) {
            if (g_.check) err_ << "no reference counts for size " << size << "; --check is informational\n";
            return kOk;
        }
        return finish(check_density(res));
    }

    int density_table(const std::vector<i64>& ns, i64 q_max) {
        const auto table = load(q_max);
        print_density_header(4);
        bool ok = true;
        for (i64 n : ns) {
            const auto res = enumerate_size4(n, q_max, table, g_.jobs);
            print_density_row(res.row, 4);
            ok = check_density(res) && ok;
        }
        return finish(ok);
    }

    int check(const SidonSet& s, i64 q_max) {
        const auto table = load(q_max);
        const auto r = fast_check(s, q_max, table);
        out_ << s.to_string() << "\n";
        for (const auto& [q, why] : r.skipped) out_ << "  skip q=" << q << ": " << why << "\n";
        if (g_.verbose)
            for (const auto& [q, v] : r.checked) err_ << "q=" << q << ", v=" << v << ": NO extension\n";
        if (r.witness) {
            const auto& w = *r.witness;
            out_ << "  EXTENDS at q=" << w.q << " (v=" << w.v << "): " << w.a << "*S + " << w.b << " = " << join(w.image)
                 << " [" << to_string(rigor_class(w.q)) << "]\n";
        } else {
            out_ << "  NON-EXTENDING for all prime powers q <= " << q_max << " (checked " << r.checked.size() << ")\n";
        }
        return kOk;
    }

    int singer(i64 q, const std::string& method, std::optional<std::uint64_t> seed) {
        if (!is_prime_power(q)) throw UsageError("singer: q=" + std::to_string(q) + " is not a prime power");
        SingerPds s;
        if (method == "trace") {
            s = singer_pds_trace(q);
        } else {
            const auto c = seed ? find_random_primitive_coeffs(q, *seed) : find_primitive_coeffs(q);
            err_ << "recurrence coefficients (" << c.a1 << ", " << c.a2 << ", " << c.a3 << ")\n";
            s = singer_pds_recurrence(q, c);
        }
        out_ << serialize_pds(q, s.pds(), s.method);
        return kOk;
    }

    int closure(const SidonSet& s, std::size_t size, i64 range, i64 q_max) {
        const auto table = load(q_max);
        const auto r = superset_closure_check(s, size, range, q_max, table, g_.jobs);
        out_ << "base " << s.to_string() << ": " << (r.precondition_met ? "non-extending" : "extends") << "\n";
        for (const auto& [sup, rep] : r.supersets)
            out_ << "  " << sup.to_string() << " " << (rep.extends ? "extends q=" + std::to_string(rep.witness->q) : "non-extending")
                 << "\n";
        out_ << "supersets " << r.count() << ", extending " << (r.count() - count_non_extending(r)) << ", violations "
             << r.violations.size() << "\n";

        bool ok = r.violations.empty();
        if (g_.check) {
            bool known = false;
            for (const auto& [k, n, expected] : golden::kClosure) {
                if (s != candidate_a() || static_cast<i64>(size) != k || range != n) continue;
                known = true;
                if (static_cast<i64>(r.count()) != expected) {
                    err_ << "check: expected " << expected << " supersets, got " << r.count() << "\n";
                    ok = false;
                }
                if (!r.all_non_extending()) ok = false;
            }
            if (!known) err_ << "no reference count for this closure; --check covers violations only\n";
        }
        return finish(ok);
    }

    int dilation_family(i64 k_max, i64 q_max) {
        const auto table = load(q_max);
        const auto rows = dilation_family_check(k_max, q_max, table, g_.jobs);
        bool ok = true;
        for (const auto& row : rows) {
            out_ << std::setw(3) << row.k << "  " << std::left << std::setw(10) << row.candidate.label << std::right << " "
                 << std::left << std::setw(20) << row.candidate.set.to_string() << std::right << " "
                 << (row.report.extends ? "extends q=" + std::to_string(row.report.witness->q) : "non-extending") << "\n";
            ok = ok && !row.report.extends;
        }
        return finish(ok);
    }

    int sub_patterns() {
        const auto r = sub_pattern_check();
        for (const auto& p : r.patterns)
            out_ << p.source.to_string() << " -> " << p.pattern.to_string() << ": "
                 << (p.match ? "matches " + p.match->label : std::string("no match")) << "\n";
        out_ << (r.novel() ? "novel" : "NOT novel") << "\n";
        return finish(r.novel());
    }

private:
    using Clock = std::chrono::steady_clock;

    static double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

    static const char* short_status(DfsStatus s) {
        switch (s) {
            case DfsStatus::Found: return "FOUND";
            case DfsStatus::Exhausted: return "X";
            case DfsStatus::Timeout: return "T";
            case DfsStatus::SkippedCollision: return "c";
            default: return "-";
        }
    }

    static std::size_t count_non_extending(const ClosureReport& r) {
        std::size_t n = 0;
        for (const auto& [s, rep] : r.supersets) n += !rep.extends;
        return n;
    }

    DfsBudget budget() const { return DfsBudget{g_.budget_s, std::nullopt}; }

    PdsTable load(i64 q_max) const {
        const auto missing = cache_.missing(q_max);
        if (!missing.empty())
            throw UsageError("PDS cache under " + cache_.root().string() + " is missing q=" + std::to_string(missing.front()) +
                             (missing.size() > 1 ? " and " + std::to_string(missing.size() - 1) + " more" : "") +
                             "; run `sidonpds build-cache " + std::to_string(q_max) + "` first");
        try {
            return cache_.load_table(q_max);
        } catch (const CacheIntegrityError& e) {
            throw UsageError(std::string(e.what()) + "; run `sidonpds build-cache " + std::to_string(q_max) + "` to rebuild");
        }
    }

    void log_entries(const IndependentReport& r) const {
        for (const auto& e : r.entries)
            err_ << r.candidate.to_string() << " q=" << e.q << ", v=" << e.v << ": " << to_string(e.status) << "\n";
    }

    void print_density_header(std::size_t size) const {
        out_ << std::setw(4) << "N" << std::setw(10) << "total" << std::setw(11) << "extending" << std::setw(15) << "non-extending";
        if (size == 4) out_ << std::setw(15) << "4*floor(N/11)";
        out_ << "\n";
    }

    void print_density_row(const DensityRow& r, std::size_t size) const {
        out_ << std::setw(4) << r.n_max << std::setw(10) << r.total << std::setw(11) << r.extending << std::setw(15)
             << r.non_extending;
        if (size == 4) out_ << std::setw(15) << r.predicted;
        out_ << "\n";
    }

    // Golden row (if any) plus family completeness; reports problems on err_.
    bool check_density(const DensityResult& res) const {
        if (!g_.check) return true;
        bool ok = true;
        if (const auto row = golden::density_row(res.row.n_max)) {
            const std::array<i64, 4> got{res.row.n_max, res.row.total, res.row.extending, res.row.non_extending};
            if (got != *row) {
                err_ << "check: N=" << res.row.n_max << " expected (" << (*row)[1] << ", " << (*row)[2] << ", " << (*row)[3]
                     << ")\n";
                ok = false;
            }
        }
        const auto c = completeness_check(res.row.n_max, res.records);
        for (const auto& s : c.unexpected) err_ << "check: unexpected non-extending " << join(s) << "\n";
        for (const auto& s : c.missing) err_ << "check: family member not classified non-extending " << join(s) << "\n";
        return ok && c.complete;
    }

    int finish(bool ok) const {
        if (!g_.check) return kOk;
        err_ << (ok ? "check: PASS\n" : "check: FAIL\n");
        return ok ? kOk : kMismatch;
    }

    Globals g_;
    PdsCache cache_;
    std::ostream& out_;
    std::ostream& err_;
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sidon sets and perfect difference sets: caches, orbit checks, exhaustive search"};
    app.name("sidonpds");
    app.require_subcommand(1);

    Globals g;
    g.data_root = default_data_root().string();
    app.add_option("--data-root", g.data_root, "Directory holding pds_cache/ and enumeration output")
        ->envname("SIDONPDS_DATA_ROOT");
    app.add_option("--budget-seconds", g.budget_s, "DFS time limit per (set, v)")->check(CLI::PositiveNumber);
    app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 4096u));
    app.add_flag("--check", g.check, "Compare against reference values; exit 1 on mismatch");
    app.add_flag("-v,--verbose", g.verbose, "Per-q progress on stderr");
    app.fallthrough();

    std::function<int(Runner&)> action;
    auto positive = CLI::Range(i64{2}, i64{1} << 20);

    auto* build = app.add_subcommand("build-cache", "Build or repair pds_q{q}.json for all prime powers q <= Q");
    i64 build_q = 0;
    build->add_option("q_max", build_q)->required()->check(positive);
    build->callback([&] { action = [&](Runner& r) { return r.build_cache(build_q); }; });

    auto* triple = app.add_subcommand("triple-verify", "Three-method verification of A, B and their reflections");
    i64 tv_q = 64, tv_lo = 2, tv_hi = 11;
    bool tv_no_hall = false;
    triple->add_option("--q-max", tv_q, "Orbit scan bound")->check(positive);
    triple->add_option("--q-lo", tv_lo, "First DFS order")->check(CLI::Range(i64{1}, i64{64}));
    triple->add_option("--q-hi", tv_hi, "Last DFS order")->check(CLI::Range(i64{1}, i64{64}));
    triple->add_flag("--no-hall", tv_no_hall, "Skip the full PDS enumerations");
    triple->callback([&] { action = [&](Runner& r) { return r.triple_verify(tv_q, tv_lo, tv_hi, !tv_no_hall); }; });

    auto* enumerate = app.add_subcommand("enumerate", "Classify all min-0 Sidon sets of a size in [0, N]");
    i64 en_n = 0, en_q = 0;
    std::size_t en_size = 0;
    enumerate->add_option("N", en_n)->required()->check(CLI::Range(i64{1}, i64{1000}));
    enumerate->add_option("size", en_size)->required()->check(CLI::Range(std::size_t{1}, std::size_t{12}));
    enumerate->add_option("q_max", en_q)->required()->check(positive);
    enumerate->callback([&] { action = [&](Runner& r) { return r.enumerate(en_n, en_size, en_q); }; });

    auto* indep = app.add_subcommand("independent-check", "Exhaustive DFS for the four candidates");
    i64 ic_lo = 2, ic_hi = 11;
    indep->add_option("--q-lo", ic_lo)->check(CLI::Range(i64{1}, i64{64}));
    indep->add_option("--q-hi", ic_hi)->check(CLI::Range(i64{1}, i64{64}));
    indep->callback([&] { action = [&](Runner& r) { return r.independent_check(ic_lo, ic_hi); }; });

    auto* density = app.add_subcommand("density-table", "Size-4 density rows for each N");
    std::vector<i64> dt_ns;
    i64 dt_q = 250;
    density->add_option("N", dt_ns)->required()->check(CLI::Range(i64{1}, i64{1000}));
    density->add_option("--q-max", dt_q)->check(positive);
    density->callback([&] { action = [&](Runner& r) { return r.density_table(dt_ns, dt_q); }; });

    auto* check = app.add_subcommand("check", "Orbit check of one Sidon set");
    std::string ck_set;
    i64 ck_q = 317;
    check->add_option("set", ck_set, "e.g. 0,1,3,11")->required();
    check->add_option("--q-max", ck_q)->check(positive);
    check->callback([&] { action = [&](Runner& r) { return r.check(parse_set(ck_set), ck_q); }; });

    auto* singer = app.add_subcommand("singer", "Print the Singer PDS for q as JSON");
    i64 sg_q = 0;
    std::string sg_method = "trace";
    std::optional<std::uint64_t> sg_seed;
    singer->add_option("q", sg_q)->required()->check(CLI::Range(i64{2}, i64{4096}));
    singer->add_option("--method", sg_method)->check(CLI::IsMember({"trace", "recurrence"}));
    singer->add_option("--seed", sg_seed, "Random primitive recurrence instead of the first one");
    singer->callback([&] { action = [&](Runner& r) { return r.singer(sg_q, sg_method, sg_seed); }; });

    auto* closure = app.add_subcommand("closure", "Classify all Sidon supersets of a set within [0, range]");
    std::string cl_set;
    std::size_t cl_size = 0;
    i64 cl_range = 0, cl_q = 317;
    closure->add_option("set", cl_set)->required();
    closure->add_option("size", cl_size)->required()->check(CLI::Range(std::size_t{1}, std::size_t{12}));
    closure->add_option("range", cl_range)->required()->check(CLI::Range(i64{0}, i64{1000}));
    closure->add_option("--q-max", cl_q)->check(positive);
    closure->callback([&] { action = [&](Runner& r) { return r.closure(parse_set(cl_set), cl_size, cl_range, cl_q); }; });

    auto* family = app.add_subcommand("dilation-family", "Orbit check of kA, refl(kA), kB, refl(kB) for k <= k_max");
    i64 df_k = 10, df_q = 317;
    family->add_option("--k-max", df_k)->check(CLI::Range(i64{1}, i64{100}));
    family->add_option("--q-max", df_q)->check(positive);
    family->callback([&] { action = [&](Runner& r) { return r.dilation_family(df_k, df_q); }; });

    auto* subpat = app.add_subcommand("sub-patterns", "Size-4 sub-patterns of {1,2,4,8,13} and {1,3,9,10,13}");
    subpat->callback([&] { action = [&](Runner& r) { return r.sub_patterns(); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        Runner runner(g, out, err);
        return action(runner);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace sidonpds::cli
