#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "armvalue/csv.hpp"  // ParseError

namespace armvalue::toml {

// Small TOML subset: [sections], key = value with strings, integers, floats,
// booleans and flat arrays.  Enough for the simulation spec files.
using Value = std::variant<std::int64_t, double, std::string, bool, std::vector<std::int64_t>,
                           std::vector<double>, std::vector<std::string>>;

struct Table {
    std::map<std::string, std::map<std::string, Value>> sections;  // "" is the root

    bool has_section(const std::string& name) const { return sections.count(name) > 0; }

    const Value* find(const std::string& section, const std::string& key) const {
        auto s = sections.find(section);
        if (s == sections.end()) return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    template <class T>
    std::optional<T> get(const std::string& section, const std::string& key) const {
        const Value* v = find(section, key);
        if (!v) return std::nullopt;
        if constexpr (std::is_same_v<T, double>) {
            if (auto* i = std::get_if<std::int64_t>(v)) return double(*i);
        }
        if constexpr (std::is_same_v<T, std::int64_t>) {
            if (!std::holds_alternative<std::int64_t>(*v))
                throw ParseError("key '" + key + "' in [" + section + "] is not an integer");
        }
        if (auto* t = std::get_if<T>(v)) return *t;
        throw ParseError("key '" + key + "' in [" + section + "] has the wrong type");
    }

    template <class T>
    T get_or(const std::string& section, const std::string& key, T fallback) const {
        auto v = get<T>(section, key);
        return v ? *v : fallback;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline Value parse_scalar(std::string_view text, std::size_t line_no) {
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"')
        return std::string(text.substr(1, text.size() - 2));
    if (text == "true") return true;
    if (text == "false") return false;
    bool looks_float = text.find_first_of(".eE") != std::string_view::npos;
    if (!looks_float) {
        std::int64_t i = 0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), i);
        if (res.ec == std::errc{} && res.ptr == text.data() + text.size()) return i;
    }
    double d = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), d);
    if (res.ec == std::errc{} && res.ptr == text.data() + text.size()) return d;
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse value '" +
                     std::string(text) + "'");
}

inline Value parse_array(std::string_view body, std::size_t line_no) {
    std::vector<Value> items;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        std::string_view item = trim(comma == std::string_view::npos
                                         ? body.substr(start)
                                         : body.substr(start, comma - start));
        if (!item.empty()) items.push_back(parse_scalar(item, line_no));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (items.empty()) return std::vector<std::int64_t>{};
    if (std::holds_alternative<std::string>(items.front())) {
        std::vector<std::string> out;
        for (auto& v : items) out.push_back(std::get<std::string>(v));
        return out;
    }
    bool any_float = false;
    for (auto& v : items)
        if (std::holds_alternative<double>(v)) any_float = true;
    if (any_float) {
        std::vector<double> out;
        for (auto& v : items)
            out.push_back(std::holds_alternative<double>(v) ? std::get<double>(v)
                                                            : double(std::get<std::int64_t>(v)));
        return out;
    }
    std::vector<std::int64_t> out;
    for (auto& v : items) out.push_back(std::get<std::int64_t>(v));
    return out;
}

}  // namespace detail

inline Table parse(std::istream& in) {
    Table table;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = detail::trim(line);
        if (s.empty() || s.front() == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ParseError("line " + std::to_string(line_no) + ": unterminated section header");
            section = std::string(detail::trim(s.substr(1, s.size() - 2)));
            table.sections[section];
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key(detail::trim(s.substr(0, eq)));
        std::string_view value = detail::trim(s.substr(eq + 1));
        // strip a trailing comment outside of strings
        if (value.empty() || key.empty())
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        if (value.front() != '"') {
            std::size_t hash = value.find('#');
            if (hash != std::string_view::npos) value = detail::trim(value.substr(0, hash));
        }
        if (table.sections[section].count(key))
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']')
                throw ParseError("line " + std::to_string(line_no) + ": unterminated array");
            table.sections[section][key] =
                detail::parse_array(value.substr(1, value.size() - 2), line_no);
        } else {
            table.sections[section][key] = detail::parse_scalar(value, line_no);
        }
    }
    return table;
}

}  // namespace armvalue::toml
