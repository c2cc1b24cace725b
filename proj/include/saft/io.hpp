// CSV and manifest output, sample-file parsing.  All numeric output uses
// 17 significant digits with '.' decimal separator and LF line endings so
// identical runs produce byte-identical files.
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "saft/sampling.hpp"

namespace saft::io {

inline constexpr const char* kArtifactVersion = "0.1.0";

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_int(long long v) { return std::to_string(v); }

// Write via a temp file and rename, so readers never observe partial output.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

inline std::string iso8601_utc(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct SampleFileError : std::runtime_error {
    int line;
    SampleFileError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Sample files are CSV rows `n,re,im` with strictly ascending integer n.
// A leading `n,re,im` header line is accepted.  Gaps are legal here; they
// surface as coverage errors when a reconstruction actually needs them.
inline std::vector<std::pair<int, Complex>> read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sample file: " + path);
    std::vector<std::pair<int, Complex>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line == "n,re,im") continue;
        long n = 0;
        double re = 0.0, im = 0.0;
        char trail = 0;
        const int got = std::sscanf(line.c_str(), "%ld,%lf,%lf%c", &n, &re, &im, &trail);
        if (got != 3) throw SampleFileError(lineno, "expected `n,re,im`, got: " + line);
        if (!rows.empty() && n <= rows.back().first)
            throw SampleFileError(lineno, "sample indices must be strictly ascending");
        rows.emplace_back(static_cast<int>(n), Complex{re, im});
    }
    if (rows.empty()) throw SampleFileError(lineno == 0 ? 1 : lineno, "sample file has no data rows");
    return rows;
}

// Contiguous slice [lo, hi] of the parsed rows; missing runs become coverage
// errors naming the first gap.
inline sampling::SampleSet to_sample_set(const std::vector<std::pair<int, Complex>>& rows, int lo,
                                         int hi) {
    if (rows.front().first > lo) throw sampling::CoverageError(lo, rows.front().first - 1);
    if (rows.back().first < hi) throw sampling::CoverageError(rows.back().first + 1, hi);
    std::size_t i = 0;
    while (i < rows.size() && rows[i].first < lo) ++i;
    std::vector<Complex> vals;
    vals.reserve(static_cast<std::size_t>(hi - lo + 1));
    int expect = lo;
    for (; i < rows.size() && rows[i].first <= hi; ++i, ++expect) {
        if (rows[i].first != expect) throw sampling::CoverageError(expect, rows[i].first - 1);
        vals.push_back(rows[i].second);
    }
    if (expect <= hi) throw sampling::CoverageError(expect, hi);
    return sampling::SampleSet(lo, std::move(vals));
}

inline void write_sample_file(const std::string& path, const sampling::SampleSet& s) {
    std::string out = "n,re,im\n";
    for (int n = s.first_index; n <= s.last_index(); ++n) {
        out += format_int(n) + ',' + format_double(s.at(n).real()) + ',' +
               format_double(s.at(n).imag()) + '\n';
    }
    write_file_atomic(path, out);
}

// Execution record written next to every output file; re-running the stored
// argv reproduces the outputs byte-identically (seeds included).
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    nlohmann::json config;
    std::optional<std::uint64_t> seed;
    std::chrono::system_clock::time_point started;
    std::chrono::system_clock::time_point finished;
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
};

inline nlohmann::json manifest_to_json(const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["config"] = m.config;
    if (m.seed)
        j["seed"] = *m.seed;
    else
        j["seed"] = nullptr;
    j["artifact_version"] = kArtifactVersion;
    j["started"] = iso8601_utc(m.started);
    j["finished"] = iso8601_utc(m.finished);
    j["outputs"] = m.outputs;
    j["wall_seconds"] = m.wall_seconds;
    return j;
}

inline void write_manifest(const std::string& path, const RunManifest& m) {
    write_file_atomic(path, manifest_to_json(m).dump(2) + "\n");
}

}  // namespace saft::io
