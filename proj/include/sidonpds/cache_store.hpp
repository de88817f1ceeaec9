#pragma once

// On-disk layout under a data root:
//   pds_cache/pds_q{q}.json               {"q":Q,"v":V,"method":"trace-zero","B":[...]}
//   size{k}_N{N}_qmax{Q}_fast.jsonl       {"set":[...],"extends":b,"q_witness":q|null,"q_max":Q}
// Both are written compactly with a fixed key order, one trailing newline per object.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "orbit_check.hpp"
#include "parallel.hpp"
#include "singer.hpp"

namespace sidonpds {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

class CacheIntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EnumerationParseError : public std::runtime_error {
public:
    EnumerationParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// $SIDONPDS_DATA_ROOT if set, else ./data
inline fs::path default_data_root() {
    if (const char* env = std::getenv("SIDONPDS_DATA_ROOT"); env && *env) return env;
    return "data";
}

/// Write via a sibling temp file and rename, so readers never see a partial file.
inline void write_file_atomic(const fs::path& path, const std::string& bytes) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << bytes;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline std::string serialize_pds(i64 q, const Pds& b, SingerMethod method = SingerMethod::TraceZero) {
    ordered_json j;
    j["q"] = q;
    j["v"] = b.v;
    j["method"] = to_string(method);
    j["B"] = b.elems;
    return j.dump() + "\n";
}

/// Parse and re-verify one cache file's content.
inline Pds parse_pds(const std::string& bytes, i64 expected_q, const std::string& origin) {
    auto fail = [&](const std::string& why) { return CacheIntegrityError(origin + ": " + why); };
    ordered_json j;
    try {
        j = ordered_json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw fail(std::string("malformed JSON (") + e.what() + ")");
    }
    if (!j.is_object() || !j.contains("B") || !j["B"].is_array()) throw fail("missing \"B\" array");
    Pds b;
    try {
        const i64 q = j.value("q", expected_q);
        b.v = j.value("v", plane_modulus(q));
        if (q != expected_q) throw fail("q=" + std::to_string(q) + " does not match file name");
        if (b.v != plane_modulus(q)) throw fail("v != q^2+q+1");
        b.elems = j["B"].get<Elems>();
    } catch (const nlohmann::json::exception& e) {
        throw fail(std::string("bad field type (") + e.what() + ")");
    }
    if (!std::is_sorted(b.elems.begin(), b.elems.end())) throw fail("B is not sorted");
    if (!verify_pds(b)) throw fail("B is not a perfect difference set mod " + std::to_string(b.v));
    return b;
}

class PdsCache {
public:
    explicit PdsCache(fs::path root = default_data_root()) : root_(std::move(root)) {}

    const fs::path& root() const { return root_; }
    fs::path pds_dir() const { return root_ / "pds_cache"; }
    fs::path pds_path(i64 q) const { return pds_dir() / ("pds_q" + std::to_string(q) + ".json"); }

    /// nullopt if absent; CacheIntegrityError if present but invalid.
    std::optional<Pds> load_pds(i64 q) const {
        const fs::path path = pds_path(q);
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_pds(buf.str(), q, path.string());
    }

    void store(const SingerPds& s) const { write_file_atomic(pds_path(s.q), serialize_pds(s.q, s.pds(), s.method)); }

    struct BuildSummary {
        std::vector<i64> qs;  // every prime power <= q_max
        std::size_t built = 0;
        std::size_t reused = 0;
    };

    /// Ensure pds_q{q}.json exists and verifies for every prime power q <= q_max.
    /// Valid entries are left untouched; missing or corrupt ones are (re)built.
    BuildSummary build_pds_cache(i64 q_max, unsigned jobs = 1,
                                 const std::function<void(i64 q, bool built)>& progress = {}) const {
        if (q_max < 2) throw std::invalid_argument("build_pds_cache: q_max must be >= 2");
        BuildSummary summary;
        summary.qs = prime_powers_in(2, q_max);
        const auto built = parallel_map<char>(summary.qs.size(), jobs, [&](std::size_t i) -> char {
            const i64 q = summary.qs[i];
            try {
                if (load_pds(q)) return 0;
            } catch (const CacheIntegrityError&) {
            }
            try {
                store(singer_pds_trace(q));
            } catch (const std::exception& e) {
                throw std::runtime_error("build_pds_cache: q=" + std::to_string(q) + ": " + e.what());
            }
            return 1;
        });
        for (std::size_t i = 0; i < built.size(); ++i) {
            built[i] ? ++summary.built : ++summary.reused;
            if (progress) progress(summary.qs[i], built[i] != 0);
        }
        return summary;
    }

    /// Every cached prime power q <= q_max; absent entries are simply missing from the table.
    PdsTable load_table(i64 q_max) const {
        PdsTable t;
        for (i64 q : prime_powers_in(2, q_max))
            if (auto b = load_pds(q)) t.insert(q, std::move(*b));
        return t;
    }

    /// Prime powers <= q_max without a cache file.
    std::vector<i64> missing(i64 q_max) const {
        std::vector<i64> out;
        for (i64 q : prime_powers_in(2, q_max))
            if (!fs::exists(pds_path(q))) out.push_back(q);
        return out;
    }

    fs::path enumeration_path(i64 n_max, std::size_t size, i64 q_max) const {
        return root_ / ("size" + std::to_string(size) + "_N" + std::to_string(n_max) + "_qmax" + std::to_string(q_max) +
                        "_fast.jsonl");
    }

private:
    fs::path root_;
};

/// Singer PDSs for every prime power q <= q_max, built in memory.
inline PdsTable build_singer_table(i64 q_max, unsigned jobs = 1) {
    const auto qs = prime_powers_in(2, q_max);
    auto built = parallel_map<SingerPds>(qs.size(), jobs, [&](std::size_t i) { return singer_pds_trace(qs[i]); });
    PdsTable t;
    for (auto& s : built) t.insert(s.q, s.pds());
    return t;
}

struct EnumerationRecord {
    Elems set;
    bool extends = false;
    std::optional<i64> q_witness;
    i64 q_max = 0;
    std::vector<std::pair<i64, std::string>> skips;  // in memory only

    friend bool operator==(const EnumerationRecord& a, const EnumerationRecord& b) {
        return a.set == b.set && a.extends == b.extends && a.q_witness == b.q_witness && a.q_max == b.q_max;
    }
};

inline std::string to_jsonl_line(const EnumerationRecord& r) {
    ordered_json j;
    j["set"] = r.set;
    j["extends"] = r.extends;
    j["q_witness"] = r.q_witness ? ordered_json(*r.q_witness) : ordered_json(nullptr);
    j["q_max"] = r.q_max;
    return j.dump() + "\n";
}

inline EnumerationRecord parse_jsonl_line(const std::string& line, std::size_t line_no) {
    try {
        const auto j = ordered_json::parse(line);
        EnumerationRecord r;
        r.set = j.at("set").get<Elems>();
        r.extends = j.at("extends").get<bool>();
        if (!j.at("q_witness").is_null()) r.q_witness = j.at("q_witness").get<i64>();
        r.q_max = j.at("q_max").get<i64>();
        if (r.extends != r.q_witness.has_value()) throw EnumerationParseError(line_no, "extends/q_witness mismatch");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw EnumerationParseError(line_no, e.what());
    }
}

/// One record per line. append=false replaces the file atomically.
inline void write_enumeration(const std::vector<EnumerationRecord>& records, const fs::path& path, bool append = false) {
    std::string bytes;
    for (const auto& r : records) bytes += to_jsonl_line(r);
    if (!append) return write_file_atomic(path, bytes);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out || !(out << bytes) || !out.flush()) throw std::runtime_error("append failed: " + path.string());
}

inline std::vector<EnumerationRecord> read_enumeration(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<EnumerationRecord> out;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (line.empty()) continue;
        out.push_back(parse_jsonl_line(line, n));
    }
    return out;
}

}  // namespace sidonpds
