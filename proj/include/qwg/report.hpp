#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "qwg/errors.hpp"

namespace qwg {

inline constexpr std::string_view k_tool_version = "1.0.0";

/// Shortest round-trip decimal rendering, locale-independent.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Content digest used for run manifests (FNV-1a 64).
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

/// Write-to-temp-then-rename so readers never observe a partial file and
/// aborted runs leave nothing behind.
inline void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw config_error("write_text_atomic: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw config_error("write_text_atomic: write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw config_error("write_text_atomic: rename failed for " + path.string());
    }
}

/// Column-oriented CSV assembly: header row, comma separation, values in
/// shortest round-trip form. No quoting is ever needed by construction.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
        if (columns_.empty())
            throw config_error("CsvWriter: need at least one column");
    }

    void add_row(const std::vector<double>& values) {
        if (values.size() != columns_.size())
            throw config_error("CsvWriter: row width does not match header");
        rows_.push_back(values);
    }

    std::string str() const {
        std::string out;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c)
                out += ',';
            out += columns_[c];
        }
        out += '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c)
                    out += ',';
                out += format_double(row[c]);
            }
            out += '\n';
        }
        return out;
    }

    void write_atomic(const std::filesystem::path& path) const { write_text_atomic(path, str()); }

    std::size_t row_count() const { return rows_.size(); }

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

enum class RunStatus { Ok, Aborted, Warning };

inline std::string_view to_string(RunStatus s) {
    switch (s) {
    case RunStatus::Ok:
        return "ok";
    case RunStatus::Aborted:
        return "aborted";
    case RunStatus::Warning:
        return "warning";
    }
    return "ok";
}

/// Structured scenario output: named scalars plus named series blocks.
struct RunReport {
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::string> series_files;
    RunStatus status = RunStatus::Ok;
    std::vector<std::string> diagnostics;

    void add_scalar(const std::string& name, double value) {
        for (const auto& [n, v] : scalars)
            if (n == name)
                throw config_error("RunReport: duplicate scalar " + name);
        scalars.emplace_back(name, value);
    }
};

struct RunManifest {
    std::string subcommand;
    std::string config_hash; // hex digest of the resolved configuration
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::string tool_version{k_tool_version};
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;
};

} // namespace qwg
