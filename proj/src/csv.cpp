#include "superrad/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace superrad {

namespace {

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string to_csv(const TimeSeries& series, const std::string& time_label) {
    const std::size_t rows = series.times.size();
    for (const auto& ch : series.channels)
        if (ch.values.size() != rows)
            throw std::invalid_argument("to_csv: channel '" + ch.label +
                                        "' does not match the time grid");
    std::string out = time_label;
    for (const auto& ch : series.channels) {
        if (ch.complex_valued) {
            out += ", " + ch.label + "_re, " + ch.label + "_im";
        } else {
            out += ", " + ch.label;
        }
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        append_number(out, series.times[r]);
        for (const auto& ch : series.channels) {
            out += ", ";
            append_number(out, ch.values[r].real());
            if (ch.complex_valued) {
                out += ", ";
                append_number(out, ch.values[r].imag());
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ", ";
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::invalid_argument("to_csv: ragged table row");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ", ";
            append_number(out, row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);  // binary: keep LF on any host
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace superrad
