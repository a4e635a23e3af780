#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "logtrig/ext_real.hpp"

namespace logtrig {

enum class ReportStatus { ok, tolerance_exceeded, error };

inline const char* status_name(ReportStatus s) {
    switch (s) {
        case ReportStatus::ok: return "ok";
        case ReportStatus::tolerance_exceeded: return "tolerance-exceeded";
        case ReportStatus::error: return "error";
    }
    return "?";
}

/// Decimal digits used when serializing an ExtReal of the given width:
/// ceil(bits * 0.302).
inline int report_digits(precision_t bits) {
    return static_cast<int>((bits * 302 + 999) / 1000);
}

inline std::string format_number(const ExtReal& x, precision_t bits) {
    return x.to_string(report_digits(bits));
}

/// One structured result row: an ordered list of (key, decimal-string)
/// fields. Numeric values are always carried as decimal strings so the
/// serialized report is identical across formats and languages.
struct ReportRow {
    std::vector<std::pair<std::string, std::string>> fields;
    bool pass = true;

    void set(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return &v;
        return nullptr;
    }
    friend bool operator==(const ReportRow& a, const ReportRow& b) {
        return a.pass == b.pass && a.fields == b.fields;
    }
};

struct ReportEnvelope {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<ReportRow> results;
    ReportStatus status = ReportStatus::ok;
    double timing_ms = 0.0;

    void set_parameter(std::string key, std::string value) {
        parameters.emplace_back(std::move(key), std::move(value));
    }

    /// tolerance-exceeded whenever any row failed its contract.
    void finalize_status() {
        if (status == ReportStatus::error) return;
        status = ReportStatus::ok;
        for (const ReportRow& r : results)
            if (!r.pass) status = ReportStatus::tolerance_exceeded;
    }

    /// Everything except timing.
    friend bool equivalent(const ReportEnvelope& a, const ReportEnvelope& b) {
        return a.command == b.command && a.parameters == b.parameters &&
               a.results == b.results && a.status == b.status;
    }
};

inline nlohmann::ordered_json to_json(const ReportEnvelope& env) {
    nlohmann::ordered_json j;
    j["command"] = env.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : env.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ReportRow& r : env.results) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.fields) row[k] = v;
        row["pass"] = r.pass;
        rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    j["status"] = status_name(env.status);
    j["timing_ms"] = env.timing_ms;
    return j;
}

inline std::string to_json_text(const ReportEnvelope& env) {
    return to_json(env).dump(2) + "\n";
}

inline ReportEnvelope from_json_text(const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    ReportEnvelope env;
    env.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items())
        env.set_parameter(k, v.get<std::string>());
    for (const auto& row : j.at("results")) {
        ReportRow r;
        for (const auto& [k, v] : row.items()) {
            if (k == "pass")
                r.pass = v.get<bool>();
            else
                r.set(k, v.get<std::string>());
        }
        env.results.push_back(std::move(r));
    }
    const std::string st = j.at("status").get<std::string>();
    env.status = st == "ok" ? ReportStatus::ok
                 : st == "tolerance-exceeded"
                     ? ReportStatus::tolerance_exceeded
                     : ReportStatus::error;
    env.timing_ms = j.at("timing_ms").get<double>();
    return env;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Union of row keys in first-appearance order (rows from different
/// report sections may carry different columns).
inline std::vector<std::string> column_union(
    const std::vector<ReportRow>& rows) {
    std::vector<std::string> cols;
    for (const ReportRow& r : rows)
        for (const auto& [k, v] : r.fields)
            if (std::find(cols.begin(), cols.end(), k) == cols.end())
                cols.push_back(k);
    cols.push_back("pass");
    return cols;
}

inline std::string cell(const ReportRow& r, const std::string& col) {
    if (col == "pass") return r.pass ? "true" : "false";
    const std::string* v = r.find(col);
    return v ? *v : std::string();
}

}  // namespace detail

/// Header line plus one record per row; UTF-8, LF line endings.
inline std::string to_csv(const ReportEnvelope& env) {
    auto cols = detail::column_union(env.results);
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_escape(cols[i]);
    }
    out += '\n';
    for (const ReportRow& r : env.results) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out += ',';
            out += detail::csv_escape(detail::cell(r, cols[i]));
        }
        out += '\n';
    }
    return out;
}

inline std::string to_table(const ReportEnvelope& env) {
    std::ostringstream out;
    out << "command: " << env.command << '\n';
    for (const auto& [k, v] : env.parameters) out << k << '=' << v << ' ';
    out << '\n';

    auto cols = detail::column_union(env.results);
    std::vector<std::size_t> width(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
    for (const ReportRow& r : env.results)
        for (std::size_t i = 0; i < cols.size(); ++i)
            width[i] = std::max(width[i], detail::cell(r, cols[i]).size());

    auto pad = [&](const std::string& s, std::size_t w) {
        std::string t = s;
        t.resize(w, ' ');
        return t;
    };
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << pad(cols[i], width[i]) << (i + 1 < cols.size() ? "  " : "");
    out << '\n';
    for (const ReportRow& r : env.results) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << pad(detail::cell(r, cols[i]), width[i])
                << (i + 1 < cols.size() ? "  " : "");
        out << '\n';
    }
    out << "status: " << status_name(env.status) << " (" << env.timing_ms
        << " ms)\n";
    return out.str();
}

inline std::string render(const ReportEnvelope& env, const std::string& fmt) {
    if (fmt == "json") return to_json_text(env);
    if (fmt == "csv") return to_csv(env);
    if (fmt == "table") return to_table(env);
    throw invalid_parameter("unknown format: " + fmt);
}

}  // namespace logtrig
