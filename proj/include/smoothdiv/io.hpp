// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "smoothdiv/sweeps.hpp"

namespace smoothdiv {

/// Shortest decimal string that round-trips to the same double (at most
/// 17 significant digits). Used for every emitted number so golden files
/// re-parse bit-exactly.
inline std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buffer, ptr);
}

inline double parse_double(std::string_view text, const std::string& what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument(what + ": cannot parse '" + std::string(text) + "' as a number");
    return value;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace detail

/// Reads a vector file: one decimal literal per line, blank lines and
/// lines starting with '#' ignored.
inline std::vector<double> read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open vector file '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = detail::trim(line);
        if (body.empty() || body.front() == '#') continue;
        values.push_back(parse_double(body, path + ":" + std::to_string(line_no)));
    }
    if (values.empty()) throw std::invalid_argument("vector file '" + path + "' contains no values");
    return values;
}

inline constexpr std::string_view kSweepCsvHeader = "mode,varying,family,divergence,target,gap";

/// Writes sweep rows in the fixed CSV schema
/// `mode,varying,family,divergence,target,gap`.
inline void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << kSweepCsvHeader << '\n';
    for (const SweepRow& row : rows) {
        out << row.mode << ',' << format_double(row.varying) << ','
            << format_double(row.family) << ',' << format_double(row.divergence_value) << ','
            << format_double(row.limit_target) << ',' << format_double(row.gap) << '\n';
    }
}

/// Parses rows previously written by write_sweep_csv.
inline std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != kSweepCsvHeader)
        throw std::invalid_argument("sweep CSV: missing or wrong header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        const std::string_view body = detail::trim(line);
        if (body.empty()) continue;
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i == body.size() || body[i] == ',') {
                fields.push_back(body.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 6) throw std::invalid_argument("sweep CSV: expected 6 fields");
        rows.push_back(SweepRow{std::string(fields[0]), parse_double(fields[1], "varying"),
                                parse_double(fields[2], "family"),
                                parse_double(fields[3], "divergence"),
                                parse_double(fields[4], "target"), parse_double(fields[5], "gap")});
    }
    return rows;
}

/// Parses a grid argument: either an explicit comma list "a,b,c" or the
/// geometric sugar "lo:hi:n" expanding to n log-spaced values.
inline std::vector<double> parse_grid(const std::string& text, const std::string& what) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string_view> parts;
        std::string_view body = text;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i == body.size() || body[i] == ':') {
                parts.push_back(body.substr(start, i - start));
                start = i + 1;
            }
        }
        if (parts.size() != 3)
            throw std::invalid_argument(what + ": log grid must look like lo:hi:n");
        const double lo = parse_double(parts[0], what);
        const double hi = parse_double(parts[1], what);
        const double n = parse_double(parts[2], what);
        if (!(lo > 0.0 && hi > 0.0 && lo != hi))
            throw std::invalid_argument(what + ": log grid needs positive lo != hi");
        if (!(n >= 2.0 && n == static_cast<double>(static_cast<std::size_t>(n))))
            throw std::invalid_argument(what + ": log grid needs an integer count >= 2");
        const auto count = static_cast<std::size_t>(n);
        const double step = std::pow(hi / lo, 1.0 / static_cast<double>(count - 1));
        double v = lo;
        for (std::size_t i = 0; i < count; ++i, v *= step)
            values.push_back(i + 1 == count ? hi : v);
        return values;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            const std::string_view item = detail::trim(std::string_view(text).substr(start, i - start));
            if (!item.empty()) values.push_back(parse_double(item, what));
            start = i + 1;
        }
    }
    if (values.empty()) throw std::invalid_argument(what + ": empty grid");
    return values;
}

}  // namespace smoothdiv
