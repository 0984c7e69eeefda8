#pragma once

// Tabular reports and their CSV / JSON serializations.
//
// CSV layout: one "# config: k=v; ..." comment line, one "# note: ..." line per
// note, a header row, then data rows. Reals use %.{precision}g, NaN and missing
// values are empty cells, text cells are quoted when they contain a comma,
// quote or line break.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace nanoquad {

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> notes;
    Table table;
};

inline std::string format_real(double v, int precision) {
    if (std::isnan(v)) return {};
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string format_cell(const Cell& c, int precision) {
    struct Visitor {
        int precision;
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_real(v, precision); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return csv_quote(s); }
    };
    return std::visit(Visitor{precision}, c);
}

inline std::string config_stamp(const std::vector<std::pair<std::string, std::string>>& config) {
    std::string out;
    for (const auto& [k, v] : config) {
        if (!out.empty()) out += "; ";
        out += k + "=" + v;
    }
    return out;
}

inline void write_csv(std::ostream& os, const Report& r, int precision = 12) {
    os << "# config: " << config_stamp(r.config) << '\n';
    for (const auto& n : r.notes) os << "# note: " << n << '\n';
    for (std::size_t i = 0; i < r.table.columns.size(); ++i)
        os << (i ? "," : "") << csv_quote(r.table.columns[i]);
    os << '\n';
    for (const auto& row : r.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i], precision);
        os << '\n';
    }
}

inline nlohmann::ordered_json cell_to_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return nullptr;
}

/// {"command", "config": {...}, "notes": [...], "columns": [...], "rows": [[...], ...]}
inline nlohmann::ordered_json to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) j["config"][k] = v;
    j["notes"] = r.notes;
    j["columns"] = r.table.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.table.rows) {
        auto jr = nlohmann::ordered_json::array();
        for (const auto& c : row) jr.push_back(cell_to_json(c));
        j["rows"].push_back(std::move(jr));
    }
    return j;
}

/// Inverse of to_json (null cells come back empty).
inline Report report_from_json(const nlohmann::ordered_json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.table.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rows")) {
        std::vector<Cell> row;
        for (const auto& c : jr) {
            if (c.is_null()) row.emplace_back(std::monostate{});
            else if (c.is_number_integer()) row.emplace_back(c.get<long long>());
            else if (c.is_number()) row.emplace_back(c.get<double>());
            else row.emplace_back(c.get<std::string>());
        }
        r.table.rows.push_back(std::move(row));
    }
    return r;
}

inline void write_json(std::ostream& os, const Report& r) { os << to_json(r).dump(2) << '\n'; }

}  // namespace nanoquad
