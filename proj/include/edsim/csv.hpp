// Minimal CSV reading: comma split with double-quote fields, line iteration.
#pragma once

#include <istream>
#include <string>
#include <vector>

#include "edsim/common.hpp"

namespace edsim {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

// Calls fn(line_number, fields) for every non-empty line. Line numbers are 1-based.
template <typename Fn>
void for_each_csv_row(std::istream& in, Fn&& fn) {
    std::string line;
    u64 line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        fn(line_no, split_csv_line(line));
    }
}

// Parses a non-negative fixed-point decimal (e.g. "1.250") into thousandths.
// Extra fractional digits beyond three are rounded half-up.
inline u64 parse_milli(const std::string& text) {
    if (text.empty()) throw ValidationError("empty numeric field");
    size_t dot = text.find('.');
    const std::string int_part = dot == std::string::npos ? text : text.substr(0, dot);
    std::string frac_part = dot == std::string::npos ? "" : text.substr(dot + 1);
    u64 whole = 0;
    if (int_part.empty() && frac_part.empty()) throw ValidationError("bad number: '" + text + "'");
    for (char c : int_part) {
        if (c < '0' || c > '9') throw ValidationError("bad number: '" + text + "'");
        whole = whole * 10 + static_cast<u64>(c - '0');
    }
    u64 milli = 0;
    for (size_t i = 0; i < frac_part.size() && i < 3; ++i) {
        char c = frac_part[i];
        if (c < '0' || c > '9') throw ValidationError("bad number: '" + text + "'");
        milli = milli * 10 + static_cast<u64>(c - '0');
    }
    for (size_t i = frac_part.size(); i < 3; ++i) milli *= 10;
    if (frac_part.size() > 3) {
        for (size_t i = 3; i < frac_part.size(); ++i) {
            char c = frac_part[i];
            if (c < '0' || c > '9') throw ValidationError("bad number: '" + text + "'");
        }
        if (frac_part[3] >= '5') ++milli;
    }
    return whole * 1000 + milli;
}

// Renders thousandths as a fixed three-decimal string ("1250" -> "1.250").
inline std::string format_milli(u64 milli) {
    std::string out = std::to_string(milli / 1000) + '.';
    u64 frac = milli % 1000;
    out += static_cast<char>('0' + frac / 100);
    out += static_cast<char>('0' + (frac / 10) % 10);
    out += static_cast<char>('0' + frac % 10);
    return out;
}

inline u64 parse_u64_field(const std::string& text) {
    if (text.empty()) throw ValidationError("empty integer field");
    u64 v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw ValidationError("bad integer: '" + text + "'");
        v = v * 10 + static_cast<u64>(c - '0');
    }
    return v;
}

} // namespace edsim
