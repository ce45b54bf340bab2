#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace gldrel {

/// Shortest locale-independent decimal form with up to `sig` significant
/// digits (general format, '.' decimal point, "inf"/"nan" for non-finites).
inline std::string format_sig(double v, int sig = 10) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, sig);
    return std::string(buf, res.ptr);
}

/// Fixed-point form with `dec` digits after the point (used by the table
/// outputs that mirror the 4-decimal reference layout).
inline std::string format_fixed(double v, int dec = 4) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, dec);
    return std::string(buf, res.ptr);
}

/// RFC 4180 style quoting: quote when the field contains a comma, a quote
/// or a line break; embedded quotes are doubled.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace gldrel
