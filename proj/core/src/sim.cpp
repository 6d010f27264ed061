// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace comac {

namespace {

constexpr long kChunkTrials = 256;

double require_positive_reading(double x) {
    if (x <= 0.0) throw std::domain_error("geometric mean requires positive readings");
    return std::log(x);
}

// Per-(method, grid point) accumulator; combined in fixed chunk order so the
// result is independent of worker count.
struct PointAcc {
    double sum = 0.0;
    double sumsq = 0.0;
    double analytic_sum = 0.0;
    long n = 0;

    void add(double mse, double analytic) {
        sum += mse;
        sumsq += mse * mse;
        analytic_sum += analytic;
        ++n;
    }
    void merge(const PointAcc& other) {
        sum += other.sum;
        sumsq += other.sumsq;
        analytic_sum += other.analytic_sum;
        n += other.n;
    }
};

double min_channel_magnitude(const ChannelSet& ch) {
    double best = std::numeric_limits<double>::infinity();
    for (int m = 0; m < ch.symbols(); ++m) {
        for (int k = 0; k < ch.nodes(); ++k) {
            const CDiag& h = ch.at(m, k);
            for (std::size_t i = 0; i < h.dim(); ++i) best = std::min(best, std::abs(h[i]));
        }
    }
    return best;
}

// Residual and noise-gain decomposition of one design on one symbol:
// error_i = u_i + sigma * conj(a_i) w_i with u the (near-zero) zero-forcing
// residual, so every grid point reuses the same unit-variance noise draw.
struct DesignEval {
    std::vector<cplx> residual;    // A^H sum_k H B X' - X_target
    std::vector<cplx> noise_gain;  // conj(a_i) w_i
    double err_const = 0.0;        // sum_k tr|A^H H_k B_k - M_k|^2
    double tr_aha = 0.0;           // tr(A^H A) = eta * N
};

void run_trial(std::uint64_t seed, long trial, const ChannelConfig& cfg,
               const SubfunctionPlan& plan, std::span<const Method> methods,
               std::span<const double> noise_vars, double p0,
               std::vector<PointAcc>& acc, long& redraws) {
    const int n = cfg.subcarriers;
    const int k_total = cfg.nodes;
    const std::size_t points = noise_vars.size();

    for (std::uint64_t attempt = 0;; ++attempt) {
        ChannelConfig draw_cfg = cfg;
        draw_cfg.seed = rng::derive(seed, {static_cast<std::uint64_t>(trial), attempt});
        const ChannelSet ch = sample_channels(draw_cfg);
        if (min_channel_magnitude(ch) < kRedrawThreshold) {
            ++redraws;
            continue;
        }
        try {
            for (int m = 0; m < cfg.ofdm_symbols; ++m) {
                const SubcarrierAssignment asg = SubcarrierAssignment::from_gains(ch, m, plan);

                // Unit-modulus random-phase symbols on assigned slots keep
                // E{X_k X_k^H} exactly at the unit-variance normalization.
                std::vector<CDiag> symbols;
                symbols.reserve(k_total);
                std::vector<cplx> target(n, cplx{0.0, 0.0});
                for (int k = 0; k < k_total; ++k) {
                    rng::Stream s(rng::derive(seed, {rng::kSymbolStream,
                                                     static_cast<std::uint64_t>(trial),
                                                     static_cast<std::uint64_t>(m),
                                                     static_cast<std::uint64_t>(k)}));
                    std::vector<cplx> x(n, cplx{0.0, 0.0});
                    for (int i = 0; i < n; ++i) {
                        const double phase = 2.0 * std::numbers::pi * s.uniform();
                        if (asg.assigned(i, k)) x[i] = std::polar(1.0, phase);
                    }
                    for (int i = 0; i < n; ++i) target[i] += x[i];
                    symbols.emplace_back(std::move(x));
                }

                rng::Stream noise_stream(rng::derive(seed, {rng::kNoiseStream,
                                                            static_cast<std::uint64_t>(trial),
                                                            static_cast<std::uint64_t>(m)}));
                const CDiag w = sample_noise(n, NoiseModel{1.0}, noise_stream);

                for (std::size_t mi = 0; mi < methods.size(); ++mi) {
                    const FilterSolution sol = design(methods[mi], ch, m, p0, asg);

                    DesignEval ev;
                    ev.residual.assign(n, cplx{0.0, 0.0});
                    ev.noise_gain.resize(n);
                    for (int i = 0; i < n; ++i) {
                        cplx y{0.0, 0.0};
                        for (int k = 0; k < k_total; ++k) {
                            y += ch.at(m, k)[i] * sol.b[k][i] * symbols[k][i];
                        }
                        const cplx ah = std::conj(sol.a[i]);
                        ev.residual[i] = ah * y - target[i];
                        ev.noise_gain[i] = ah * w[i];
                    }
                    for (int k = 0; k < k_total; ++k) {
                        for (int i = 0; i < n; ++i) {
                            const cplx gain = std::conj(sol.a[i]) * ch.at(m, k)[i] * sol.b[k][i];
                            const double mask = asg.assigned(i, k) ? 1.0 : 0.0;
                            ev.err_const += std::norm(gain - mask);
                        }
                    }
                    ev.tr_aha = fro_norm_sq(sol.a);

                    for (std::size_t p = 0; p < points; ++p) {
                        const double sigma = std::sqrt(noise_vars[p]);
                        double mse = 0.0;
                        for (int i = 0; i < n; ++i) {
                            mse += std::norm(ev.residual[i] + sigma * ev.noise_gain[i]);
                        }
                        const double analytic = ev.err_const + noise_vars[p] * ev.tr_aha;
                        acc[mi * points + p].add(mse, analytic);
                    }
                }
            }
            return;
        } catch (const NearSingularError&) {
            ++redraws;
        }
    }
}

}  // namespace

NomographicSpec arithmetic_mean_spec(int nodes) {
    NomographicSpec spec;
    spec.name = "arithmetic-mean";
    spec.pre = [](double x) { return x; };
    spec.post = [nodes](double x) { return x / nodes; };
    return spec;
}

NomographicSpec geometric_mean_spec(int nodes) {
    NomographicSpec spec;
    spec.name = "geometric-mean";
    spec.pre = require_positive_reading;
    spec.post = [nodes](double x) { return std::exp(x / nodes); };
    return spec;
}

TransmissionRecord transmit_round(const FilterSolution& sol, const ChannelSet& ch, int m,
                                  const std::vector<CDiag>& symbols, const NoiseModel& noise,
                                  rng::Stream& stream) {
    const int n = ch.subcarriers();
    if (static_cast<int>(symbols.size()) != ch.nodes() ||
        static_cast<int>(sol.b.size()) != ch.nodes()) {
        throw std::invalid_argument("transmit_round: one symbol/filter matrix per node required");
    }
    for (const CDiag& x : symbols) {
        if (x.dim() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("transmit_round: symbol dimension mismatch");
        }
    }

    const CDiag w = sample_noise(n, noise, stream);
    std::vector<cplx> target(n, cplx{0.0, 0.0});
    std::vector<cplx> hat(n, cplx{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        cplx y{0.0, 0.0};
        for (int k = 0; k < ch.nodes(); ++k) {
            y += ch.at(m, k)[i] * sol.b[k][i] * symbols[k][i];
            target[i] += symbols[k][i];
        }
        hat[i] = std::conj(sol.a[i]) * (y + w[i]);
    }
    return TransmissionRecord{CDiag(std::move(hat)), CDiag(std::move(target)), w};
}

double analytic_mse(const FilterSolution& sol, const ChannelSet& ch, int m,
                    const NoiseModel& noise) {
    return analytic_mse(sol, ch, m, noise,
                        SubcarrierAssignment::full(ch.subcarriers(), ch.nodes()));
}

double analytic_mse(const FilterSolution& sol, const ChannelSet& ch, int m,
                    const NoiseModel& noise, const SubcarrierAssignment& assignment) {
    const int n = ch.subcarriers();
    double err = 0.0;
    for (int k = 0; k < ch.nodes(); ++k) {
        for (int i = 0; i < n; ++i) {
            const cplx gain = std::conj(sol.a[i]) * ch.at(m, k)[i] * sol.b[k][i];
            const double mask = assignment.assigned(i, k) ? 1.0 : 0.0;
            err += std::norm(gain - mask);
        }
    }
    return err + noise.variance * fro_norm_sq(sol.a);
}

MseGridResult simulate_mse_grid(std::span<const Method> methods, const ChannelConfig& cfg,
                                const SubfunctionPlan& plan, std::span<const double> noise_vars,
                                long trials, double p0, std::uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("simulate_mse_grid: trials must be >= 1");
    if (noise_vars.empty()) throw std::invalid_argument("simulate_mse_grid: empty noise grid");
    if (methods.empty()) throw std::invalid_argument("simulate_mse_grid: no methods given");
    if (plan.nodes != cfg.nodes) {
        throw std::invalid_argument("simulate_mse_grid: plan/config node count mismatch");
    }

    const std::size_t points = noise_vars.size();
    const std::size_t cells = methods.size() * points;
    const long nchunks = (trials + kChunkTrials - 1) / kChunkTrials;

    struct Chunk {
        std::vector<PointAcc> acc;
        long redraws = 0;
    };
    std::vector<Chunk> chunks(nchunks);

    auto work_chunk = [&](long c) {
        Chunk& out = chunks[c];
        out.acc.assign(cells, PointAcc{});
        const long begin = c * kChunkTrials;
        const long end = std::min(trials, begin + kChunkTrials);
        for (long t = begin; t < end; ++t) {
            run_trial(seed, t, cfg, plan, methods, noise_vars, p0, out.acc, out.redraws);
        }
    };

    if (threads <= 1) {
        for (long c = 0; c < nchunks; ++c) work_chunk(c);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        const int nworkers = std::min<long>(threads, nchunks);
        pool.reserve(nworkers);
        for (int w = 0; w < nworkers; ++w) {
            pool.emplace_back([&] {
                for (long c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1)) {
                    work_chunk(c);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    std::vector<PointAcc> total(cells);
    long redraws = 0;
    for (const Chunk& c : chunks) {
        for (std::size_t i = 0; i < cells; ++i) total[i].merge(c.acc[i]);
        redraws += c.redraws;
    }

    MseGridResult result;
    result.methods.assign(methods.begin(), methods.end());
    result.redraws = redraws;
    result.per_method.resize(methods.size());
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        result.per_method[mi].resize(points);
        for (std::size_t p = 0; p < points; ++p) {
            const PointAcc& a = total[mi * points + p];
            MseEstimate& e = result.per_method[mi][p];
            e.trials = trials;
            e.mean = a.sum / a.n;
            e.analytic = a.analytic_sum / a.n;
            if (a.n > 1) {
                const double var = std::max(0.0, (a.sumsq - a.sum * a.sum / a.n) / (a.n - 1));
                e.std_error = std::sqrt(var / a.n);
            }
        }
    }
    return result;
}

std::vector<MseEstimate> monte_carlo_mse(Method method, const ChannelConfig& cfg,
                                         const SubfunctionPlan& plan,
                                         std::span<const double> noise_vars, long trials,
                                         double p0, std::uint64_t seed, long* redraws) {
    const Method methods[] = {method};
    MseGridResult grid = simulate_mse_grid(methods, cfg, plan, noise_vars, trials, p0, seed);
    if (redraws != nullptr) *redraws = grid.redraws;
    return grid.per_method[0];
}

namespace {

double symbol_scale(std::span<const double> values) {
    double power = 0.0;
    for (double v : values) power += v * v;
    const double rms = std::sqrt(power / std::max<std::size_t>(1, values.size()));
    return rms > 0.0 ? 1.0 / rms : 1.0;
}

}  // namespace

double compute_function(const NomographicSpec& spec, std::span<const double> readings,
                        const FilterSolution& sol, const ChannelSet& ch, int m,
                        const NoiseModel& noise, rng::Stream& stream) {
    const int k_total = ch.nodes();
    if (static_cast<int>(readings.size()) != k_total) {
        throw std::invalid_argument("compute_function: one reading per node required");
    }
    std::vector<double> pre(k_total);
    for (int k = 0; k < k_total; ++k) pre[k] = spec.pre(readings[k]);

    const double scale = symbol_scale(pre);
    std::vector<CDiag> symbols;
    symbols.reserve(k_total);
    for (int k = 0; k < k_total; ++k) {
        std::vector<cplx> x(ch.subcarriers(), cplx{0.0, 0.0});
        x[0] = cplx{pre[k] * scale, 0.0};
        symbols.emplace_back(std::move(x));
    }
    const TransmissionRecord rec = transmit_round(sol, ch, m, symbols, noise, stream);
    return spec.post(rec.x_hat[0].real() / scale);
}

double compute_function_grouped(const NomographicSpec& spec, std::span<const double> readings,
                                const SubfunctionPlan& plan, const FilterSolution& sol,
                                const ChannelSet& ch, int m, const NoiseModel& noise,
                                rng::Stream& stream) {
    const int k_total = ch.nodes();
    if (static_cast<int>(readings.size()) != k_total || plan.nodes != k_total) {
        throw std::invalid_argument("compute_function_grouped: readings/plan must cover all nodes");
    }
    if (plan.groups > ch.subcarriers()) {
        throw std::invalid_argument("compute_function_grouped: need one subcarrier slot per group");
    }
    std::vector<double> pre(k_total);
    for (int k = 0; k < k_total; ++k) pre[k] = spec.pre(readings[k]);

    const double scale = symbol_scale(pre);
    std::vector<CDiag> symbols;
    symbols.reserve(k_total);
    for (int k = 0; k < k_total; ++k) {
        std::vector<cplx> x(ch.subcarriers(), cplx{0.0, 0.0});
        x[k / plan.group_size] = cplx{pre[k] * scale, 0.0};
        symbols.emplace_back(std::move(x));
    }
    const TransmissionRecord rec = transmit_round(sol, ch, m, symbols, noise, stream);
    std::vector<double> sums(plan.groups);
    for (int b = 0; b < plan.groups; ++b) sums[b] = rec.x_hat[b].real() / scale;
    return reconstruct_desired(sums, spec);
}

double reconstruct_desired(std::span<const double> group_pre_sums, const NomographicSpec& spec) {
    if (group_pre_sums.empty()) {
        throw std::invalid_argument("reconstruct_desired: no group sums given");
    }
    double total = 0.0;
    for (double s : group_pre_sums) total += s;
    return spec.post(total);
}

}  // namespace comac
