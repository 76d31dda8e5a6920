#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cavitychain/branches.hpp"
#include "cavitychain/errors.hpp"
#include "cavitychain/spectra.hpp"

namespace cavitychain {

// Shortest round-trippable decimal form, so identical runs write identical
// bytes on any libc.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[40];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v) return shorter;
        }
    }
    return buf;
}

inline void write_trace_csv(const std::string& path, const SpectrumTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << "frequency_hz,re,im\n";
    for (size_t i = 0; i < trace.samples.size(); ++i) {
        out << format_double(trace.frequency(static_cast<int>(i))) << ','
            << format_double(trace.samples[i].real()) << ','
            << format_double(trace.samples[i].imag()) << '\n';
    }
}

inline SpectrumTrace read_trace_csv(const std::string& path, TraceKind kind) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error(path + " is empty");
    if (line != "frequency_hz,re,im" && line != "frequency_hz,re,im\r") {
        throw Error(path + ": expected header 'frequency_hz,re,im', got '" + line + "'");
    }
    std::vector<double> f;
    SpectrumTrace t;
    t.kind = kind;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
            throw Error(path + ": bad row '" + line + "'");
        }
        f.push_back(std::stod(a));
        t.samples.emplace_back(std::stod(b), std::stod(c));
    }
    if (f.size() < 3) throw GridError(path + ": need at least 3 rows");
    t.grid.start_hz = f.front();
    t.grid.stop_hz = f.back();
    t.grid.step_hz = (f.back() - f.front()) / (f.size() - 1);
    t.pole_flag.assign(f.size(), 0);
    t.lossless = true;
    for (const auto& s : t.samples) {
        if (std::abs(s.real()) > 1e-12 * (std::abs(s.imag()) + 1e-300)) {
            t.lossless = false;
            break;
        }
    }
    return t;
}

inline void write_branches_csv(const std::string& path, const AvoidedCrossing& ac) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << "lj_h,branch_low_hz,branch_high_hz\n";
    for (size_t i = 0; i < ac.sweep_values.size(); ++i) {
        out << format_double(ac.sweep_values[i]) << ',';
        if (ac.branch_low[i]) out << format_double(*ac.branch_low[i]);
        out << ',';
        if (ac.branch_high[i]) out << format_double(*ac.branch_high[i]);
        out << '\n';
    }
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline void write_table_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    for (size_t i = 0; i < table.columns.size(); ++i) {
        out << table.columns[i] << (i + 1 < table.columns.size() ? ',' : '\n');
    }
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out << format_double(row[i]) << (i + 1 < row.size() ? ',' : '\n');
        }
    }
}

inline std::vector<std::pair<double, double>> read_pairs_csv(const std::string& path,
                                                             const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error(path + " is empty");
    if (!expected_header.empty() && line != expected_header && line != expected_header + "\r") {
        throw Error(path + ": expected header '" + expected_header + "'");
    }
    std::vector<std::pair<double, double>> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
            throw Error(path + ": bad row '" + line + "'");
        }
        out.emplace_back(std::stod(a), std::stod(b));
    }
    return out;
}

}  // namespace cavitychain
