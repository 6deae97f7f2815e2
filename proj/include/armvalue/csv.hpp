#pragma once

#include <charconv>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace armvalue {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace csv {

// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

[[noreturn]] inline void fail(std::size_t line_no, std::string_view field, std::string_view what) {
    throw ParseError("line " + std::to_string(line_no) + ": field '" + std::string(field) +
                     "': " + std::string(what));
}

inline long long parse_int(std::string_view text, std::size_t line_no, std::string_view field) {
    long long value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        fail(line_no, field, "not an integer: '" + std::string(text) + "'");
    return value;
}

inline double parse_double(std::string_view text, std::size_t line_no, std::string_view field) {
    double value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        fail(line_no, field, "not a number: '" + std::string(text) + "'");
    return value;
}

// Row iterator over a headered CSV.  '#'-prefixed lines and blank lines are
// skipped; the header row must match `expected_header` byte for byte.
class Reader {
public:
    Reader(std::istream& in, std::string_view expected_header) : in_(in) {
        std::string line;
        if (!read_significant_line(line))
            throw ParseError("missing header row (expected '" + std::string(expected_header) + "')");
        if (line != expected_header)
            throw ParseError("header mismatch: expected '" + std::string(expected_header) +
                             "', got '" + line + "'");
    }

    bool next(std::vector<std::string_view>& fields) {
        if (!read_significant_line(current_))
            return false;
        fields = split(current_);
        return true;
    }

    std::size_t line_number() const { return line_no_; }

    void expect_fields(const std::vector<std::string_view>& fields, std::size_t n) const {
        if (fields.size() != n)
            throw ParseError("line " + std::to_string(line_no_) + ": expected " +
                             std::to_string(n) + " fields, got " + std::to_string(fields.size()));
    }

private:
    bool read_significant_line(std::string& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line.front() == '#') continue;
            out = std::move(line);
            return true;
        }
        return false;
    }

    std::istream& in_;
    std::string current_;
    std::size_t line_no_ = 0;
};

}  // namespace csv
}  // namespace armvalue
