#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace gaknn::detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

/// Strips one layer of matching single or double quotes.
inline std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                          (s.front() == '"' && s.back() == '"'))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

/// Splits on commas outside quotes; fields are trimmed, quotes kept.
inline std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    char quote = '\0';
    for (char c : line) {
        if (quote != '\0') {
            cur += c;
            if (c == quote) quote = '\0';
        } else if (c == '\'' || c == '"') {
            cur += c;
            quote = c;
        } else if (c == ',') {
            fields.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.emplace_back(trim(cur));
    return fields;
}

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

/// Quotes a name for ARFF output when it contains whitespace or commas.
inline std::string arff_quote(std::string_view name) {
    bool needs = name.empty();
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}' ||
            c == '%') {
            needs = true;
            break;
        }
    }
    if (!needs) return std::string(name);
    return "'" + std::string(name) + "'";
}

}  // namespace gaknn::detail
