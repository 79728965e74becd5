// io.hpp: Self-describing CSV/JSON tables and complex-number parsing for the CLI

#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nhjc/linalg.hpp"

namespace nhjc::io {

using json = nlohmann::ordered_json;

/// 17 significant digits, scientific notation: lossless for doubles.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

inline double parse_real(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("not a real number: '" + std::string(s) + "'");
    }
    return out;
}

/// Accepts "3", "-2.5e-1", "20i", "-i", "3+20i", "3-2.5j", "(3,20)" and "3,20".
inline Complex parse_complex(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);

    if (const auto comma = s.find(','); comma != std::string::npos) {
        return {parse_real(std::string_view(s).substr(0, comma)), parse_real(std::string_view(s).substr(comma + 1))};
    }
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};

    s.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const auto imag_part = [](std::string_view t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (split == std::string::npos) return {0.0, imag_part(s)};
    return {parse_real(std::string_view(s).substr(0, split)), imag_part(std::string_view(s).substr(split))};
}

/// JSON complex: number, [re, im], {"re": .., "im": ..} or a string for parse_complex.
inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j.at(0).get<double>(), j.at(1).get<double>()};
    if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw std::invalid_argument("cannot read complex number from JSON value " + j.dump());
}

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

/// One output artifact: leading metadata, a header row, data rows and trailing
/// notes. CSV renders metadata and notes as '# key: value' comment lines.
struct Table {
    std::string command;
    std::vector<std::pair<std::string, json>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    std::vector<std::pair<std::string, json>> footer;

    void add_meta(std::string key, json value) { meta.emplace_back(std::move(key), std::move(value)); }
    void add_meta_complex(const std::string& key, Complex z) {
        meta.emplace_back(key + "_re", z.real());
        meta.emplace_back(key + "_im", z.imag());
    }
};

inline std::string format_cell(const json& v) {
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline void write_csv(std::ostream& os, const Table& t) {
    os << "# command: " << t.command << '\n';
    for (const auto& [k, v] : t.meta) os << "# " << k << ": " << format_cell(v) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
    for (const auto& [k, v] : t.footer) os << "# " << k << ": " << format_cell(v) << '\n';
}

inline json to_json(const Table& t) {
    json params = json::object();
    for (const auto& [k, v] : t.meta) params[k] = v;
    json summary = json::object();
    for (const auto& [k, v] : t.footer) summary[k] = v;
    json rows = json::array();
    for (const auto& row : t.rows) rows.push_back(json(row));
    return json{{"command", t.command}, {"parameters", params}, {"columns", t.columns}, {"rows", rows},
                {"summary", summary}};
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

/// Parsed CSV artifact with every cell kept as text.
struct CsvFile {
    std::vector<std::pair<std::string, std::string>> meta;  // header and footer comments, in order
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string meta_value(std::string_view key) const {
        for (const auto& [k, v] : meta)
            if (k == key) return v;
        throw std::out_of_range("missing metadata key '" + std::string(key) + "'");
    }
    double meta_real(std::string_view key) const { return parse_real(meta_value(key)); }
    Complex meta_complex(const std::string& key) const {
        return {meta_real(key + "_re"), meta_real(key + "_im")};
    }
    std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw std::out_of_range("missing column '" + std::string(name) + "'");
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline CsvFile read_csv(std::istream& is) {
    CsvFile f;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto colon = line.find(": ");
            if (colon == std::string::npos) continue;
            f.meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
        } else if (f.columns.empty()) {
            f.columns = split_csv_line(line);
        } else {
            f.rows.push_back(split_csv_line(line));
        }
    }
    return f;
}

}  // namespace nhjc::io
