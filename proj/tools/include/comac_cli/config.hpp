// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_CLI_CONFIG_HPP
#define COMAC_CLI_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "comac/filter_design.hpp"

namespace comac::cli {

/// One experiment sweep: the Cartesian product of nodes x subcarriers x
/// methods x Eb/N0 grid, each point estimated over `trials` channel draws.
struct ExperimentConfig {
    std::vector<int> nodes_list;
    std::vector<int> subcarriers_list;
    std::vector<double> ebno_db_grid;
    std::vector<Method> methods;
    long trials = 10000;
    double p0 = 1.0;
    int plan_m = 0;  // nodes per subfunction; 0 means M = K (full participation)
    int plan_d = 1;
    int ofdm_symbols = 1;
    std::uint64_t seed = 42;
    std::string out_dir = "results";
    bool normalize_by_n = false;
    int threads = 1;
};

/// "0:1:10" (start:step:stop, inclusive) or a comma list "0,2.5,5".
std::vector<double> parse_ebno_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<Method> parse_methods(const std::string& text);

/// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& cfg);

/// Parses sweep flags ("--nodes 2,5,8 --subcarriers 6 --ebno 0:1:10 ...")
/// into a validated config with defaults applied. A `--config file` flag
/// loads key=value pairs; explicit flags win.
ExperimentConfig parse_config(const std::vector<std::string>& args);

}  // namespace comac::cli

#endif  // COMAC_CLI_CONFIG_HPP
