// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_CLI_SWEEP_HPP
#define COMAC_CLI_SWEEP_HPP

#include <functional>
#include <vector>

#include "comac_cli/config.hpp"
#include "comac_cli/csv.hpp"

namespace comac::cli {

using RowSink = std::function<void(const ResultRow&)>;

/// Full Cartesian sweep over (K, N, method, Eb/N0). Rows are handed to the
/// sink as each (K, N) configuration completes, and returned in order.
/// Deterministic for a given seed independent of thread count.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, const RowSink& sink = {});

}  // namespace comac::cli

#endif  // COMAC_CLI_SWEEP_HPP
