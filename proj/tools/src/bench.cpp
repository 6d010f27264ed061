// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac_cli/bench.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "comac/filter_design.hpp"
#include "comac/op_count.hpp"
#include "comac/sim.hpp"

namespace comac::cli {

namespace {

// Receive-filter construction only: unitary part and denoising factor.
double construct_receive_filter(Method method, const ChannelSet& ch,
                                const SubcarrierAssignment& asg, double p0) {
    CDiag f;
    switch (method) {
        case Method::kA1AvgSumChannel: f = unitary_a1(ch, 0); break;
        case Method::kA2Eigen: f = unitary_a2(ch, 0); break;
        case Method::kA3EffectiveChannel: f = unitary_a3(ch, 0); break;
    }
    double eta = eta_star(f, ch, 0, p0, asg);
    if (method == Method::kA1AvgSumChannel) {
        eta = std::max(eta, eta_average_channel(asg, p0));
    }
    return eta;
}

}  // namespace

BenchResult bench_complexity(std::span<const int> k_list, int subcarriers, int repetitions,
                             std::uint64_t seed) {
    if (k_list.empty()) throw std::invalid_argument("bench_complexity: empty K list");
    if (repetitions < 1) throw std::invalid_argument("bench_complexity: repetitions must be >= 1");

    constexpr Method kMethods[] = {Method::kA1AvgSumChannel, Method::kA2Eigen,
                                   Method::kA3EffectiveChannel};
    BenchResult result;
    std::map<std::string, std::vector<std::pair<double, double>>> samples;  // (ln KN, ln ops)

    for (int k : k_list) {
        ChannelConfig cfg;
        cfg.nodes = k;
        cfg.subcarriers = subcarriers;
        cfg.seed = rng::derive(seed, {static_cast<std::uint64_t>(k)});
        const ChannelSet ch = sample_channels(cfg);
        const SubcarrierAssignment asg = SubcarrierAssignment::full(subcarriers, k);
        const double p0 = static_cast<double>(subcarriers);

        for (Method method : kMethods) {
            volatile double sink = construct_receive_filter(method, ch, asg, p0);  // warm-up

            ops::reset();
            sink = construct_receive_filter(method, ch, asg, p0);
            const ops::Tally tally = ops::snapshot();

            double best_ns = std::numeric_limits<double>::infinity();
            for (int rep = 0; rep < repetitions; ++rep) {
                const auto start = std::chrono::steady_clock::now();
                sink = construct_receive_filter(method, ch, asg, p0);
                const auto stop = std::chrono::steady_clock::now();
                best_ns = std::min(
                    best_ns,
                    std::chrono::duration<double, std::nano>(stop - start).count());
            }
            (void)sink;

            BenchRow row;
            row.method = method_name(method);
            row.nodes = k;
            row.subcarriers = subcarriers;
            row.op_adds = tally.adds;
            row.op_muls = tally.muls;
            row.op_divs = tally.divs;
            row.op_sqrts = tally.sqrts;
            row.op_total = tally.total();
            row.wall_ns = best_ns;
            samples[row.method].push_back({std::log(static_cast<double>(k) * subcarriers),
                                           std::log(static_cast<double>(row.op_total))});
            result.rows.push_back(std::move(row));
        }
    }

    for (const auto& [method, pts] : samples) {
        if (pts.size() < 2) continue;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(pts.size());
        result.loglog_slope[method] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return result;
}

void print_bench(const BenchResult& result, std::ostream& out) {
    out << "method        K       N     adds     muls     divs    sqrts    total   wall(ns)\n";
    for (const BenchRow& r : result.rows) {
        out << std::left << std::setw(8) << r.method << std::right << std::setw(7) << r.nodes
            << std::setw(8) << r.subcarriers << std::setw(9) << r.op_adds << std::setw(9)
            << r.op_muls << std::setw(9) << r.op_divs << std::setw(9) << r.op_sqrts
            << std::setw(9) << r.op_total << std::setw(11) << std::fixed << std::setprecision(0)
            << r.wall_ns << '\n';
        out.unsetf(std::ios::fixed);
    }
    if (!result.loglog_slope.empty()) {
        out << "log-log slope of op count vs K*N:";
        for (const auto& [method, slope] : result.loglog_slope) {
            out << "  " << method << "=" << std::setprecision(3) << slope;
        }
        out << '\n';
        out << "(entrywise diagonal kernels: all three methods scale linearly in K*N;\n"
            << " a3 pays a constant factor for the per-node decompositions)\n";
    }
}

}  // namespace comac::cli
