// csv.cpp — RFC 4180 style numeric CSV with round-trip precision

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>

#include "dqw/cli.hpp"
#include "dqw/errors.hpp"

namespace dqw::cli {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw IoError("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

void CsvTable::sort_rows() {
    if (sort_keys.empty()) return;
    std::stable_sort(rows.begin(), rows.end(), [this](const auto& a, const auto& b) {
        for (auto k : sort_keys) {
            if (a[k] < b[k]) return true;
            if (b[k] < a[k]) return false;
        }
        return false;
    });
}

void CsvTable::write(std::ostream& out) const {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\r\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << "\r\n";
    }
    if (!out) throw IoError("failed writing CSV output");
}

} // namespace dqw::cli
