// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_SIM_HPP
#define COMAC_SIM_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "comac/channel.hpp"
#include "comac/filter_design.hpp"
#include "comac/scheduling.hpp"

namespace comac {

/// Channel realizations with any subcarrier gain below this magnitude are
/// redrawn rather than clipped: the transmit filters invert the channel, and
/// clipping would silently change the estimator. Redraws are counted.
inline constexpr double kRedrawThreshold = 1e-6;

/// A function computable over the air: f(sum_k g_k(s_k)) with per-node
/// preprocessing g and receive-side postprocessing f.
struct NomographicSpec {
    std::string name;
    std::function<double(double)> pre;
    std::function<double(double)> post;
    int params = 1;
};

NomographicSpec arithmetic_mean_spec(int nodes);
NomographicSpec geometric_mean_spec(int nodes);

/// Outcome of one filtered transmission round.
struct TransmissionRecord {
    CDiag x_hat;      // receive-filtered estimate
    CDiag x_target;   // ideal superposition sum_k X_k
    CDiag noise_draw;
};

/// One filtered superposition round: X_hat = A^H sum_k H_k B_k X'_k + A^H W
/// with W freshly drawn from the stream.
TransmissionRecord transmit_round(const FilterSolution& sol, const ChannelSet& ch, int m,
                                  const std::vector<CDiag>& symbols, const NoiseModel& noise,
                                  rng::Stream& stream);

/// Expected squared error of a design over unit-power symbols and the noise
/// model: sum_k tr[(A^H H_k B_k - I)(.)^H] + sigma_n^2 tr(A^H A), with the
/// identity restricted to each node's assigned subcarriers. For the exact
/// closed-form solution this reduces to sigma_n^2 * eta * N.
double analytic_mse(const FilterSolution& sol, const ChannelSet& ch, int m,
                    const NoiseModel& noise);
double analytic_mse(const FilterSolution& sol, const ChannelSet& ch, int m,
                    const NoiseModel& noise, const SubcarrierAssignment& assignment);

struct MseEstimate {
    double mean = 0.0;
    long trials = 0;
    double std_error = 0.0;
    double analytic = 0.0;  // average analytic value over the same draws
};

/// Monte-Carlo sweep over a grid of noise variances for several methods at
/// once. All methods see identical channel, symbol and noise draws; the
/// noise grid reuses one unit-variance draw per trial scaled to each
/// variance. Deterministic for a given seed, independent of thread count.
struct MseGridResult {
    std::vector<Method> methods;
    std::vector<std::vector<MseEstimate>> per_method;  // [method][grid point]
    long redraws = 0;
};

MseGridResult simulate_mse_grid(std::span<const Method> methods, const ChannelConfig& cfg,
                                const SubfunctionPlan& plan, std::span<const double> noise_vars,
                                long trials, double p0, std::uint64_t seed, int threads = 1);

/// Single-method convenience wrapper over simulate_mse_grid.
std::vector<MseEstimate> monte_carlo_mse(Method method, const ChannelConfig& cfg,
                                         const SubfunctionPlan& plan,
                                         std::span<const double> noise_vars, long trials,
                                         double p0, std::uint64_t seed, long* redraws = nullptr);

/// End-to-end computation of a nomographic function: encodes the
/// preprocessed readings into transmit symbols (one parameter per subcarrier
/// slot, symbol-power normalization applied and inverted at the receiver),
/// runs one transmission round and applies the postprocessing function.
double compute_function(const NomographicSpec& spec, std::span<const double> readings,
                        const FilterSolution& sol, const ChannelSet& ch, int m,
                        const NoiseModel& noise, rng::Stream& stream);

/// Grouped variant: the plan's B node groups each compute their partial sum
/// on a dedicated subcarrier slot; the partial pre-images are then
/// recombined. Requires N >= B.
double compute_function_grouped(const NomographicSpec& spec, std::span<const double> readings,
                                const SubfunctionPlan& plan, const FilterSolution& sol,
                                const ChannelSet& ch, int m, const NoiseModel& noise,
                                rng::Stream& stream);

/// Applies the postprocessing function to the total of the per-group
/// pre-image sums.
double reconstruct_desired(std::span<const double> group_pre_sums, const NomographicSpec& spec);

}  // namespace comac

#endif  // COMAC_SIM_HPP
