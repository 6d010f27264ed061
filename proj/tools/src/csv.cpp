// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac_cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace comac::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string format_row(const ResultRow& r) {
    std::ostringstream out;
    out << r.method << ',' << r.nodes << ',' << r.subcarriers << ',' << fmt(r.ebno_db) << ','
        << fmt(r.mse_mean) << ',' << fmt(r.mse_stderr) << ',' << fmt(r.analytic_mean) << ','
        << r.trials << ',' << r.redraws;
    return out.str();
}

void emit_csv(std::span<const ResultRow> rows, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows to write");
    out << kCsvHeader << '\n';
    for (const ResultRow& r : rows) out << format_row(r) << '\n';
    if (!out) throw std::runtime_error("emit_csv: write failed");
}

void emit_csv_file(std::span<const ResultRow> rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "'");
    emit_csv(rows, out);
}

std::vector<ResultRow> parse_result_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_result_csv: empty input");
    if (line != kCsvHeader) throw std::runtime_error("parse_result_csv: unexpected header");

    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        ResultRow r;
        auto next = [&]() -> std::string {
            if (!std::getline(ss, field, ',')) {
                throw std::runtime_error("parse_result_csv: short row '" + line + "'");
            }
            return field;
        };
        r.method = next();
        r.nodes = std::stoi(next());
        r.subcarriers = std::stoi(next());
        r.ebno_db = std::stod(next());
        r.mse_mean = std::stod(next());
        r.mse_stderr = std::stod(next());
        r.analytic_mean = std::stod(next());
        r.trials = std::stol(next());
        r.redraws = std::stol(next());
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResultRow> parse_result_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_result_csv: cannot open '" + path + "'");
    return parse_result_csv(in);
}

}  // namespace comac::cli
