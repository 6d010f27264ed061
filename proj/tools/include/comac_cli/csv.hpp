// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_CLI_CSV_HPP
#define COMAC_CLI_CSV_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace comac::cli {

struct ResultRow {
    std::string method;
    int nodes = 0;
    int subcarriers = 0;
    double ebno_db = 0.0;
    double mse_mean = 0.0;
    double mse_stderr = 0.0;
    double analytic_mean = 0.0;
    long trials = 0;
    long redraws = 0;

    bool operator==(const ResultRow&) const = default;
};

inline constexpr const char* kCsvHeader =
    "method,K,N,ebno_db,mse_mean,mse_stderr,analytic_mean,trials,redraws";

/// Formats doubles with enough digits to round-trip exactly.
std::string format_row(const ResultRow& row);

void emit_csv(std::span<const ResultRow> rows, std::ostream& out);
void emit_csv_file(std::span<const ResultRow> rows, const std::string& path);

std::vector<ResultRow> parse_result_csv(std::istream& in);
std::vector<ResultRow> parse_result_csv_file(const std::string& path);

}  // namespace comac::cli

#endif  // COMAC_CLI_CSV_HPP
