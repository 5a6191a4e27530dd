#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tailkit/core.hpp"

namespace tailkit {

namespace detail {

inline std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    try {
        std::size_t pos = 0;
        out = std::stod(t, &pos);
        return pos == t.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace detail

/// Column selector: by header name or 0-based index.
struct ColumnSpec {
    std::string name;       // used when not empty
    std::size_t index = 0;  // used when name is empty

    static ColumnSpec by_name(std::string n) { return ColumnSpec{std::move(n), 0}; }
    static ColumnSpec by_index(std::size_t i) { return ColumnSpec{"", i}; }
};

struct CsvOptions {
    char sep = ',';          // --sep ';' for semicolon files
    bool skip_bad = false;   // skip unparseable rows instead of failing
};

/// Load one value column (and optionally a timestamp column) from a CSV
/// file with a header row. Unparseable rows are an error unless
/// opts.skip_bad is set, in which case the row is dropped.
inline ReturnSeries load_csv(const std::string& path, const ColumnSpec& value_col,
                             Convention convention = Convention::price,
                             const std::optional<ColumnSpec>& time_col = std::nullopt,
                             const CsvOptions& opts = {}) {
    std::ifstream in(path);
    require(in.good(), "load_csv: cannot open " + path);

    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "load_csv: empty file " + path);
    const auto header = detail::split_line(line, opts.sep);

    auto resolve = [&header, &path](const ColumnSpec& c) -> std::size_t {
        if (!c.name.empty()) {
            for (std::size_t i = 0; i < header.size(); ++i)
                if (detail::trim(header[i]) == c.name) return i;
            fail("load_csv: column '" + c.name + "' not found in " + path);
        }
        require(c.index < header.size(), "load_csv: column index out of range");
        return c.index;
    };

    const std::size_t vi = resolve(value_col);
    std::optional<std::size_t> ti;
    if (time_col) ti = resolve(*time_col);

    ReturnSeries out;
    out.convention = convention;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        // blank rows count as unparseable values, not silent gaps
        if (detail::trim(line).empty()) {
            if (opts.skip_bad) continue;
            fail("load_csv: blank row " + std::to_string(row) + " in " + path);
        }
        const auto cells = detail::split_line(line, opts.sep);
        double v = 0.0;
        const bool ok = vi < cells.size() && detail::parse_double(cells[vi], v);
        if (!ok) {
            if (opts.skip_bad) continue;
            fail("load_csv: non-numeric value at row " + std::to_string(row) + " in " +
                 path);
        }
        out.values.push_back(v);
        if (ti) {
            require(*ti < cells.size(), "load_csv: missing timestamp cell at row " +
                                            std::to_string(row));
            out.timestamps.push_back(detail::trim(cells[*ti]));
        }
    }
    require(!out.values.empty(), "load_csv: no usable rows in " + path);
    return out;
}

/// Write a series as `timestamp,value` (or `index,value` without timestamps).
inline void save_csv(const ReturnSeries& series, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), "save_csv: cannot open " + path);
    out << "timestamp,value\n";
    char buf[64];
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", series.values[i]);
        if (!series.timestamps.empty())
            out << series.timestamps[i] << ',' << buf << '\n';
        else
            out << i << ',' << buf << '\n';
    }
    require(out.good(), "save_csv: write failed for " + path);
}

}  // namespace tailkit
