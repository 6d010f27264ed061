// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac_cli/config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace comac::cli {

namespace {

double parse_double(const std::string& s, const char* field) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(field) + ": cannot parse number '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

std::vector<double> parse_ebno_grid(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("--ebno: empty grid");
    if (text.find(':') != std::string::npos) {
        const std::vector<std::string> parts = split(text, ':');
        if (parts.size() != 3) {
            throw std::invalid_argument("--ebno: range form is start:step:stop, got '" + text + "'");
        }
        const double start = parse_double(parts[0], "--ebno");
        const double step = parse_double(parts[1], "--ebno");
        const double stop = parse_double(parts[2], "--ebno");
        if (step <= 0.0 || stop < start) {
            throw std::invalid_argument("--ebno: need step > 0 and stop >= start");
        }
        std::vector<double> grid;
        for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
        return grid;
    }
    std::vector<double> grid;
    for (const std::string& item : split(text, ',')) grid.push_back(parse_double(item, "--ebno"));
    if (grid.empty()) throw std::invalid_argument("--ebno: empty grid");
    return grid;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const std::string& item : split(text, ',')) {
        const double v = parse_double(item, "integer list");
        if (v != std::floor(v)) throw std::invalid_argument("integer list: '" + item + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<Method> parse_methods(const std::string& text) {
    std::vector<Method> out;
    for (const std::string& item : split(text, ',')) {
        if (item == "a1") {
            out.push_back(Method::kA1AvgSumChannel);
        } else if (item == "a2") {
            out.push_back(Method::kA2Eigen);
        } else if (item == "a3") {
            out.push_back(Method::kA3EffectiveChannel);
        } else {
            throw std::invalid_argument("--methods: unknown method '" + item +
                                        "' (expected a1, a2, a3)");
        }
    }
    return out;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.nodes_list.empty()) throw std::invalid_argument("--nodes: empty list");
    if (cfg.subcarriers_list.empty()) throw std::invalid_argument("--subcarriers: empty list");
    if (cfg.ebno_db_grid.empty()) throw std::invalid_argument("--ebno: empty grid");
    if (cfg.methods.empty()) throw std::invalid_argument("--methods: empty method list");
    if (cfg.trials < 1) throw std::invalid_argument("--trials: must be >= 1");
    if (cfg.p0 <= 0.0) throw std::invalid_argument("--p0: must be > 0");
    if (cfg.plan_m < 0) throw std::invalid_argument("--plan-m: must be >= 0 (0 means M = K)");
    if (cfg.plan_d < 1) throw std::invalid_argument("--plan-d: must be >= 1");
    if (cfg.ofdm_symbols < 1) throw std::invalid_argument("--symbols: must be >= 1");
    if (cfg.threads < 1) throw std::invalid_argument("--threads: must be >= 1");
    for (int k : cfg.nodes_list) {
        if (k < 1) throw std::invalid_argument("--nodes: node counts must be >= 1");
        const int m = cfg.plan_m == 0 ? k : cfg.plan_m;
        // Raises IndivisiblePlanError with the offending pair.
        make_plan(k, m, cfg.plan_d);
    }
    for (int n : cfg.subcarriers_list) {
        if (n < 1) throw std::invalid_argument("--subcarriers: subcarrier counts must be >= 1");
    }
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"sweep options"};
    app.allow_config_extras(false);
    std::string nodes = "8";
    std::string subcarriers = "6";
    std::string ebno = "0:1:10";
    std::string methods = "a1,a2,a3";
    ExperimentConfig cfg;

    app.add_option("--nodes", nodes, "node counts K, comma separated");
    app.add_option("--subcarriers", subcarriers, "subcarrier counts N, comma separated");
    app.add_option("--ebno", ebno, "Eb/N0 grid in dB: start:step:stop or comma list");
    app.add_option("--methods", methods, "receive-filter methods: subset of a1,a2,a3");
    app.add_option("--trials", cfg.trials, "Monte-Carlo trials per grid point");
    app.add_option("--p0", cfg.p0, "per-node transmit power budget");
    app.add_option("--plan-m", cfg.plan_m, "nodes per subfunction (0: all K)");
    app.add_option("--plan-d", cfg.plan_d, "subfunction split across subcarriers");
    app.add_option("--symbols", cfg.ofdm_symbols, "OFDM symbols per trial");
    app.add_option("--seed", cfg.seed, "master seed");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_flag("--normalize-by-n", cfg.normalize_by_n, "report MSE divided by N");
    app.add_option("--threads", cfg.threads, "worker threads");
    app.set_config("--config");

    // CLI11 wants argv in reverse order for its vector overload.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(std::string("flag parsing: ") + e.what());
    }

    cfg.nodes_list = parse_int_list(nodes);
    cfg.subcarriers_list = parse_int_list(subcarriers);
    cfg.ebno_db_grid = parse_ebno_grid(ebno);
    cfg.methods = parse_methods(methods);
    validate(cfg);
    return cfg;
}

}  // namespace comac::cli
