// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ristw/errors.hpp>
#include <ristw/sweep.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ristw {

inline constexpr const char* kCsvHeader =
    "scheme,variable,value,seed,eta,r_D,r_U,objective,iters,ms";

namespace detail {

/// Shortest decimal form that still round-trips a double exactly.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

inline void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    if (records.empty()) throw domain_error("refusing to write a CSV with no records");
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << kCsvHeader << "\n";
    for (const auto& r : records) {
        out << r.scheme << ',' << r.variable << ',' << detail::format_double(r.value) << ','
            << r.seed << ',' << detail::format_double(r.eta) << ','
            << detail::format_double(r.rate_down) << ',' << detail::format_double(r.rate_up)
            << ',' << detail::format_double(r.objective) << ',' << r.iters << ','
            << detail::format_double(r.ms) << "\n";
    }
    if (!out.flush()) throw io_error("short write to '" + path + "'");
}

inline std::vector<SweepRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw parse_error("'" + path + "' is empty");
    if (line == std::string(kCsvHeader) + "\r") line.pop_back();
    if (line != kCsvHeader)
        throw parse_error("'" + path + "' does not start with the expected header");

    std::vector<SweepRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 10)
            throw parse_error(path + " line " + std::to_string(lineno) +
                              ": expected 10 fields, got " + std::to_string(cells.size()));
        SweepRecord r;
        r.scheme = cells[0];
        r.variable = cells[1];
        try {
            r.value = std::stod(cells[2]);
            r.seed = std::stoull(cells[3]);
            r.eta = std::stod(cells[4]);
            r.rate_down = std::stod(cells[5]);
            r.rate_up = std::stod(cells[6]);
            r.objective = std::stod(cells[7]);
            r.iters = std::stol(cells[8]);
            r.ms = std::stod(cells[9]);
        } catch (const std::exception&) {
            throw parse_error(path + " line " + std::to_string(lineno) + ": bad numeric field");
        }
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace ristw
