// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_CLI_SVG_CHART_HPP
#define COMAC_CLI_SVG_CHART_HPP

#include <span>
#include <string>

#include "comac_cli/csv.hpp"

namespace comac::cli {

/// Renders the sweep as a static SVG: MSE-vs-Eb/N0 lines (log scale), one
/// per (method, K, N), plus grouped per-method bars at 1 and 5 dB when those
/// grid points are present.
void emit_chart(std::span<const ResultRow> rows, const std::string& path);

}  // namespace comac::cli

#endif  // COMAC_CLI_SVG_CHART_HPP
