// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_CLI_BENCH_HPP
#define COMAC_CLI_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace comac::cli {

struct BenchRow {
    std::string method;
    int nodes = 0;
    int subcarriers = 0;
    std::uint64_t op_adds = 0;
    std::uint64_t op_muls = 0;
    std::uint64_t op_divs = 0;
    std::uint64_t op_sqrts = 0;
    std::uint64_t op_total = 0;
    double wall_ns = 0.0;  // best-of-repetitions wall time per construction
};

struct BenchResult {
    std::vector<BenchRow> rows;
    // Least-squares slope of log(op_total) against log(K*N) per method.
    std::map<std::string, double> loglog_slope;
};

/// Counts the real floating-point operations spent constructing the receive
/// filter (unitary part plus denoising factor) per method, on one fixed
/// channel draw per K. Counts are deterministic; wall times are the minimum
/// over `repetitions` runs.
BenchResult bench_complexity(std::span<const int> k_list, int subcarriers, int repetitions,
                             std::uint64_t seed);

void print_bench(const BenchResult& result, std::ostream& out);

}  // namespace comac::cli

#endif  // COMAC_CLI_BENCH_HPP
