#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fgb/core.hpp"

namespace fgb {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

inline double parse_cell(const std::string& cell, std::size_t row_1based,
                         const std::string& col_name) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw CsvError("row " + std::to_string(row_1based) + ", column " +
                       col_name + ": cannot parse '" + cell +
                       "' as a finite number");
    return value;
}

// Round-trip (shortest exact) decimal form of a double.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace detail

// Read a numeric CSV into a Dataset. When label_column names a column (or is
// "last"), that column is pulled out as ground-truth labels, densely
// re-indexed by order of first appearance; label cells may be arbitrary text.
inline Dataset load_csv(const std::string& path,
                        const std::optional<std::string>& label_column = std::nullopt,
                        bool has_header = true) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path + "'");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw CsvError("'" + path + "' is empty");

    std::size_t first_data = 0;
    std::vector<std::string> header;
    if (has_header) {
        header = detail::split_fields(lines[0]);
        first_data = 1;
        if (lines.size() == 1) throw CsvError("'" + path + "' has no data rows");
    }

    const std::size_t n_cols = detail::split_fields(lines[first_data]).size();
    if (n_cols == 0) throw CsvError("'" + path + "' has no columns");
    if (has_header && header.size() != n_cols)
        throw CsvError("header has " + std::to_string(header.size()) +
                       " columns but row " + std::to_string(first_data + 1) +
                       " has " + std::to_string(n_cols));

    std::optional<std::size_t> label_idx;
    if (label_column) {
        if (*label_column == "last") {
            label_idx = n_cols - 1;
        } else {
            for (std::size_t c = 0; c < header.size(); ++c)
                if (header[c] == *label_column) label_idx = c;
            if (!label_idx)
                throw CsvError("label column '" + *label_column +
                               "' not found in header");
        }
        if (n_cols < 2)
            throw CsvError("'" + path + "' has no feature columns besides the label");
    }

    auto column_name = [&](std::size_t c) {
        return has_header ? "'" + header[c] + "'" : std::to_string(c + 1);
    };

    const std::size_t n_rows = lines.size() - first_data;
    const std::size_t d = label_idx ? n_cols - 1 : n_cols;
    Dataset data;
    data.points = Matrix(n_rows, d);
    std::vector<int> labels;
    std::unordered_map<std::string, int> label_ids;

    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t row_1based = first_data + r + 1;
        const auto fields = detail::split_fields(lines[first_data + r]);
        if (fields.size() != n_cols)
            throw CsvError("row " + std::to_string(row_1based) + " has " +
                           std::to_string(fields.size()) + " columns, expected " +
                           std::to_string(n_cols));
        std::size_t out_col = 0;
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (label_idx && c == *label_idx) {
                const auto [it, inserted] = label_ids.emplace(
                    fields[c], static_cast<int>(label_ids.size()));
                labels.push_back(it->second);
                continue;
            }
            data.points(r, out_col++) =
                detail::parse_cell(fields[c], row_1based, column_name(c));
        }
    }
    if (label_idx) data.labels = std::move(labels);
    return data;
}

inline void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write '" + path + "'");
    out << "label\n";
    for (int l : labels) out << l << "\n";
}

inline void write_balls_csv(const std::string& path,
                            const std::vector<FuzzyGranularBall>& balls,
                            const std::vector<int>& ball_labels,
                            std::size_t d) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write '" + path + "'");
    out << "ball_id,size,radius,dm,label";
    for (std::size_t j = 0; j < d; ++j) out << ",c_" << j;
    out << "\n";
    for (std::size_t b = 0; b < balls.size(); ++b) {
        out << b << "," << balls[b].size << ","
            << detail::format_double(balls[b].radius) << ","
            << detail::format_double(balls[b].dm) << "," << ball_labels[b];
        for (std::size_t j = 0; j < d; ++j)
            out << "," << detail::format_double(balls[b].center[j]);
        out << "\n";
    }
}

}  // namespace fgb
