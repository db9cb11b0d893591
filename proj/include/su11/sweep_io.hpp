#ifndef SU11_SWEEP_IO_HPP
#define SU11_SWEEP_IO_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "su11/errors.hpp"
#include "su11/version.hpp"

namespace su11 {

// Universal tabulated output record. Byte-identical output for identical
// configs: fixed %.17g float formatting, meta emitted in insertion order.
struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> meta;

    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
    void add_meta(const std::string& k, double v) { meta.emplace_back(k, format_double(v)); }

    static std::string format_double(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

inline void write_csv(std::ostream& os, const SweepResult& t) {
    os << "# su11_version = " << version() << "\n";
    for (const auto& [k, v] : t.meta) os << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw domain_error("write_csv: row width does not match the header");
        for (std::size_t c = 0; c < row.size(); ++c)
            os << SweepResult::format_double(row[c]) << (c + 1 < row.size() ? "," : "");
        os << "\n";
    }
}

namespace detail {
inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}
} // namespace detail

inline void write_json(std::ostream& os, const SweepResult& t) {
    os << "{\n  \"su11_version\": \"" << version() << "\",\n  \"meta\": {";
    for (std::size_t i = 0; i < t.meta.size(); ++i) {
        os << (i ? ", " : "") << "\"" << detail::json_escape(t.meta[i].first) << "\": \""
           << detail::json_escape(t.meta[i].second) << "\"";
    }
    os << "},\n  \"columns\": [";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? ", " : "") << "\"" << detail::json_escape(t.columns[c]) << "\"";
    os << "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (t.rows[r].size() != t.columns.size())
            throw domain_error("write_json: row width does not match the header");
        os << "    [";
        for (std::size_t c = 0; c < t.rows[r].size(); ++c)
            os << (c ? ", " : "") << SweepResult::format_double(t.rows[r][c]);
        os << "]" << (r + 1 < t.rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

inline void write_table(std::ostream& os, const SweepResult& t, const std::string& format) {
    if (format == "csv")
        write_csv(os, t);
    else if (format == "json")
        write_json(os, t);
    else
        throw domain_error("write_table: format must be csv or json");
}

} // namespace su11

#endif
