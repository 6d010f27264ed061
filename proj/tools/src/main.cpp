// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "comac/sim.hpp"
#include "comac_cli/bench.hpp"
#include "comac_cli/config.hpp"
#include "comac_cli/csv.hpp"
#include "comac_cli/svg_chart.hpp"
#include "comac_cli/sweep.hpp"

namespace {

using namespace comac;
using namespace comac::cli;

struct RawSweepOptions {
    std::string nodes = "8";
    std::string subcarriers = "6";
    std::string ebno = "0:1:10";
    std::string methods = "a1,a2,a3";
    ExperimentConfig cfg;
};

void add_sweep_options(CLI::App* app, RawSweepOptions& raw) {
    app->add_option("--nodes", raw.nodes, "node counts K, comma separated");
    app->add_option("--subcarriers", raw.subcarriers, "subcarrier counts N, comma separated");
    app->add_option("--ebno", raw.ebno, "Eb/N0 grid in dB: start:step:stop or comma list");
    app->add_option("--methods", raw.methods, "receive-filter methods: subset of a1,a2,a3");
    app->add_option("--trials", raw.cfg.trials, "Monte-Carlo trials per grid point");
    app->add_option("--p0", raw.cfg.p0, "per-node transmit power budget");
    app->add_option("--plan-m", raw.cfg.plan_m, "nodes per subfunction (0: all K)");
    app->add_option("--plan-d", raw.cfg.plan_d, "subfunction split across subcarriers");
    app->add_option("--symbols", raw.cfg.ofdm_symbols, "OFDM symbols per trial");
    app->add_option("--seed", raw.cfg.seed, "master seed");
    app->add_option("--out", raw.cfg.out_dir, "output directory");
    app->add_flag("--normalize-by-n", raw.cfg.normalize_by_n, "report MSE divided by N");
    app->add_option("--threads", raw.cfg.threads, "worker threads");
    app->set_config("--config", "", "key=value config file; explicit flags win");
}

ExperimentConfig finalize(RawSweepOptions& raw) {
    raw.cfg.nodes_list = parse_int_list(raw.nodes);
    raw.cfg.subcarriers_list = parse_int_list(raw.subcarriers);
    raw.cfg.ebno_db_grid = parse_ebno_grid(raw.ebno);
    raw.cfg.methods = parse_methods(raw.methods);
    validate(raw.cfg);
    return raw.cfg;
}

int run_sweep_command(RawSweepOptions& raw) {
    const ExperimentConfig cfg = finalize(raw);
    std::filesystem::create_directories(cfg.out_dir);
    const std::string csv_path = cfg.out_dir + "/results.csv";
    const std::string svg_path = cfg.out_dir + "/chart.svg";

    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
    csv << kCsvHeader << '\n';
    // Rows stream to disk as each configuration finishes.
    const std::vector<ResultRow> rows = run_sweep(cfg, [&](const ResultRow& row) {
        csv << format_row(row) << '\n';
        csv.flush();
        if (!csv) throw std::runtime_error("write failed for '" + csv_path + "'");
    });
    csv.close();

    emit_chart(rows, svg_path);
    std::cout << "wrote " << rows.size() << " rows to " << csv_path << " and chart to "
              << svg_path << '\n';
    return 0;
}

int run_bench_command(const std::string& nodes, int subcarriers, int reps, std::uint64_t seed,
                      const std::string& out_dir) {
    const std::vector<int> k_list = parse_int_list(nodes);
    const BenchResult result = bench_complexity(k_list, subcarriers, reps, seed);
    print_bench(result, std::cout);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::string path = out_dir + "/bench.csv";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open '" + path + "'");
        out << "method,K,N,adds,muls,divs,sqrts,total,wall_ns\n";
        for (const BenchRow& r : result.rows) {
            out << r.method << ',' << r.nodes << ',' << r.subcarriers << ',' << r.op_adds << ','
                << r.op_muls << ',' << r.op_divs << ',' << r.op_sqrts << ',' << r.op_total << ','
                << r.wall_ns << '\n';
        }
        std::cout << "wrote op counts to " << path << '\n';
    }
    return 0;
}

int run_feedback_demo(int nodes, int subcarriers, double p0, std::uint64_t seed) {
    ChannelConfig cfg;
    cfg.nodes = nodes;
    cfg.subcarriers = subcarriers;
    cfg.seed = seed;
    const ChannelSet ch = sample_channels(cfg);

    std::vector<CDiag> d;
    d.reserve(nodes);
    for (int k = 0; k < nodes; ++k) d.push_back(feedback_signal(ch.at(0, k)));
    const CDiag z = feedback_aggregate(ch, 0, d);
    const CDiag g = effective_channel_g(ch, 0);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < z.dim(); ++i) {
        num += std::norm(z[i] - g[i]);
        den += std::norm(g[i]);
    }
    const double residual = std::sqrt(num) / std::max(1e-300, std::sqrt(den));

    const CDiag f = feedback_postprocess(z);
    const double eta = eta_star(f, ch, 0, p0);
    const CDiag a = dscale(f, cplx{std::sqrt(eta), 0.0});
    const FilterSolution direct = design(Method::kA3EffectiveChannel, ch, 0, p0);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) max_dev = std::max(max_dev, std::abs(a[i] - direct.a[i]));

    std::cout << "feedback aggregation: ||Z - G|| / ||G|| = " << residual << '\n';
    std::cout << "receive filter rebuilt from feedback vs direct CSI: max|dA| = " << max_dev
              << " (eta = " << eta << ")\n";
    return residual <= 1e-12 && max_dev <= 1e-10 ? 0 : 1;
}

int run_compute_command(const std::string& function, const std::string& readings_text,
                        const std::string& method_text, int subcarriers, double ebno_db,
                        double sigma2_override, double p0, std::uint64_t seed) {
    std::vector<double> readings;
    for (const std::string& tok : [&] {
            std::vector<std::string> parts;
            std::stringstream ss(readings_text);
            std::string item;
            while (std::getline(ss, item, ',')) parts.push_back(item);
            return parts;
        }()) {
        readings.push_back(std::stod(tok));
    }
    if (readings.empty()) throw std::invalid_argument("--readings: need at least one value");
    const int k = static_cast<int>(readings.size());

    const std::vector<Method> methods = parse_methods(method_text);
    if (methods.size() != 1) throw std::invalid_argument("--methods: pick exactly one method");

    NomographicSpec spec;
    double exact = 0.0;
    if (function == "arithmetic-mean") {
        spec = arithmetic_mean_spec(k);
        double sum = 0.0;
        for (double r : readings) sum += r;
        exact = sum / k;
    } else if (function == "geometric-mean") {
        spec = geometric_mean_spec(k);
        double logsum = 0.0;
        for (double r : readings) logsum += std::log(r);
        exact = std::exp(logsum / k);
    } else {
        throw std::invalid_argument("--function: expected arithmetic-mean or geometric-mean");
    }

    ChannelConfig cfg;
    cfg.nodes = k;
    cfg.subcarriers = subcarriers;
    cfg.seed = seed;
    const ChannelSet ch = sample_channels(cfg);
    const FilterSolution sol = design(methods[0], ch, 0, p0);
    const double sigma2 = sigma2_override >= 0.0 ? sigma2_override : ebno_to_noise_var(ebno_db);
    rng::Stream noise_stream(rng::derive(seed, {rng::kNoiseStream}));

    const double value =
        compute_function(spec, readings, sol, ch, 0, NoiseModel{sigma2}, noise_stream);
    std::cout << function << " over " << k << " nodes (" << method_name(methods[0])
              << ", sigma^2 = " << sigma2 << "): " << value << "  [exact " << exact << "]\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"over-the-air computation transceiver simulator"};
    app.require_subcommand(1);

    RawSweepOptions sweep_raw;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo MSE sweep, CSV + SVG output");
    add_sweep_options(sweep_cmd, sweep_raw);

    std::string bench_nodes = "8,32,128";
    int bench_n = 16;
    int bench_reps = 25;
    std::uint64_t bench_seed = 42;
    std::string bench_out;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "operation counts of the receive-filter construction");
    bench_cmd->add_option("--nodes", bench_nodes, "node counts K, comma separated");
    bench_cmd->add_option("--subcarriers", bench_n, "subcarrier count N");
    bench_cmd->add_option("--reps", bench_reps, "wall-time repetitions");
    bench_cmd->add_option("--seed", bench_seed, "channel seed");
    bench_cmd->add_option("--out", bench_out, "optional output directory for bench.csv");

    int fb_nodes = 8;
    int fb_n = 6;
    double fb_p0 = 1.0;
    std::uint64_t fb_seed = 42;
    CLI::App* fb_cmd = app.add_subcommand(
        "feedback-demo", "run the noiseless feedback protocol and print the Z = G residual");
    fb_cmd->add_option("--nodes", fb_nodes, "node count K");
    fb_cmd->add_option("--subcarriers", fb_n, "subcarrier count N");
    fb_cmd->add_option("--p0", fb_p0, "per-node power budget");
    fb_cmd->add_option("--seed", fb_seed, "channel seed");

    std::string cf_function = "arithmetic-mean";
    std::string cf_readings;
    std::string cf_method = "a2";
    int cf_n = 4;
    double cf_ebno = 10.0;
    double cf_sigma2 = 0.0;
    double cf_p0 = 1.0;
    std::uint64_t cf_seed = 42;
    CLI::App* cf_cmd = app.add_subcommand("compute", "one-shot nomographic computation");
    cf_cmd->add_option("--function", cf_function, "arithmetic-mean or geometric-mean");
    cf_cmd->add_option("--readings", cf_readings, "per-node sensor readings, comma separated")
        ->required();
    cf_cmd->add_option("--methods", cf_method, "receive-filter method (one of a1,a2,a3)");
    cf_cmd->add_option("--subcarriers", cf_n, "subcarrier count N");
    cf_cmd->add_option("--ebno", cf_ebno, "Eb/N0 in dB (used when --sigma2 < 0)");
    cf_cmd->add_option("--sigma2", cf_sigma2, "noise variance; 0 for noiseless, < 0 to use --ebno");
    cf_cmd->add_option("--p0", cf_p0, "per-node power budget");
    cf_cmd->add_option("--seed", cf_seed, "channel seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) return run_sweep_command(sweep_raw);
        if (bench_cmd->parsed()) {
            return run_bench_command(bench_nodes, bench_n, bench_reps, bench_seed, bench_out);
        }
        if (fb_cmd->parsed()) return run_feedback_demo(fb_nodes, fb_n, fb_p0, fb_seed);
        if (cf_cmd->parsed()) {
            return run_compute_command(cf_function, cf_readings, cf_method, cf_n, cf_ebno,
                                       cf_sigma2, cf_p0, cf_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
