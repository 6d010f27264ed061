// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac_cli/sweep.hpp"

#include "comac/sim.hpp"

namespace comac::cli {

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, const RowSink& sink) {
    validate(cfg);
    std::vector<ResultRow> rows;

    for (int k : cfg.nodes_list) {
        const int m_eff = cfg.plan_m == 0 ? k : cfg.plan_m;
        const SubfunctionPlan plan = make_plan(k, m_eff, cfg.plan_d);
        for (int n : cfg.subcarriers_list) {
            ChannelConfig ch_cfg;
            ch_cfg.nodes = k;
            ch_cfg.subcarriers = n;
            ch_cfg.ofdm_symbols = cfg.ofdm_symbols;

            std::vector<double> noise_vars;
            noise_vars.reserve(cfg.ebno_db_grid.size());
            for (double db : cfg.ebno_db_grid) noise_vars.push_back(ebno_to_noise_var(db));

            const std::uint64_t config_seed =
                rng::derive(cfg.seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)});
            const MseGridResult grid =
                simulate_mse_grid(cfg.methods, ch_cfg, plan, noise_vars, cfg.trials, cfg.p0,
                                  config_seed, cfg.threads);

            const double scale = cfg.normalize_by_n ? 1.0 / n : 1.0;
            for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
                for (std::size_t p = 0; p < noise_vars.size(); ++p) {
                    const MseEstimate& e = grid.per_method[mi][p];
                    ResultRow row;
                    row.method = method_name(cfg.methods[mi]);
                    row.nodes = k;
                    row.subcarriers = n;
                    row.ebno_db = cfg.ebno_db_grid[p];
                    row.mse_mean = e.mean * scale;
                    row.mse_stderr = e.std_error * scale;
                    row.analytic_mean = e.analytic * scale;
                    row.trials = e.trials;
                    row.redraws = grid.redraws;
                    if (sink) sink(row);
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

}  // namespace comac::cli
