// Acceptance suite: runs every product-level criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria. Run a single criterion with --only <id>.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "comac/sim.hpp"
#include "comac_cli/bench.hpp"
#include "comac_cli/config.hpp"
#include "comac_cli/sweep.hpp"

using namespace comac;
using namespace comac::cli;

namespace {

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::ostream&)> run;
};

constexpr Method kA1 = Method::kA1AvgSumChannel;
constexpr Method kA2 = Method::kA2Eigen;
constexpr Method kA3 = Method::kA3EffectiveChannel;
constexpr Method kAll[] = {kA1, kA2, kA3};

ChannelConfig channel_config(int k, int n, std::uint64_t seed) {
    ChannelConfig cfg;
    cfg.nodes = k;
    cfg.subcarriers = n;
    cfg.seed = seed;
    return cfg;
}

std::vector<double> ebno_grid_vars(double start, double step, double stop) {
    std::vector<double> vars;
    for (double db = start; db <= stop + 1e-9; db += step) vars.push_back(ebno_to_noise_var(db));
    return vars;
}

double combined_se(const MseEstimate& a, const MseEstimate& b) {
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

// ---------------------------------------------------------------------------
// 1. Headline gap: with N=6, K=8, >=1e5 trials, MSE(a1) - MSE(a2) at 1 dB is
//    positive and in [0.2, 1.5]; a2 beats a1 at every grid point; the run
//    stays under 2 minutes single-threaded.
// ---------------------------------------------------------------------------
bool criterion_headline_gap(std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();

    const SubfunctionPlan plan = make_plan(8, 1, 2);  // top-4 node selection
    const std::vector<double> vars = ebno_grid_vars(0, 1, 10);
    const Method methods[] = {kA1, kA2};
    const MseGridResult res =
        simulate_mse_grid(methods, channel_config(8, 6, 42), plan, vars, 100000, 120.0, 42, 1);

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const MseEstimate& a1_1db = res.per_method[0][1];
    const MseEstimate& a2_1db = res.per_method[1][1];
    const double gap = a1_1db.mean - a2_1db.mean;

    int beaten = 0;
    for (std::size_t p = 0; p < vars.size(); ++p) {
        if (res.per_method[1][p].mean < res.per_method[0][p].mean) ++beaten;
    }

    const bool pass = gap > 0.0 && gap >= 0.2 && gap <= 1.5 &&
                      beaten == static_cast<int>(vars.size()) && elapsed < 120.0;
    out << "gap@1dB=" << gap << " (need [0.2,1.5]), a2<a1 at " << beaten << "/" << vars.size()
        << " points, " << elapsed << "s";
    return pass;
}

// ---------------------------------------------------------------------------
// 2. For N=6 and K in {2,5,8}, every method's MSE curve is strictly
//    decreasing in Eb/N0 over 0..10 dB (per fixed seed set, within 3 SE).
// ---------------------------------------------------------------------------
bool criterion_monotone_in_ebno(std::ostream& out) {
    const std::vector<double> vars = ebno_grid_vars(0, 1, 10);
    bool pass = true;
    for (int k : {2, 5, 8}) {
        const int d = k == 8 ? 2 : k;  // T=4 for K=8, T=1 otherwise
        const SubfunctionPlan plan = make_plan(k, 1, d);
        const MseGridResult res =
            simulate_mse_grid(kAll, channel_config(k, 6, 42), plan, vars, 20000, 120.0, 42, 1);
        for (std::size_t mi = 0; mi < 3; ++mi) {
            for (std::size_t p = 1; p < vars.size(); ++p) {
                const MseEstimate& prev = res.per_method[mi][p - 1];
                const MseEstimate& cur = res.per_method[mi][p];
                if (!(cur.mean < prev.mean + 3.0 * combined_se(prev, cur))) {
                    pass = false;
                    out << "not decreasing: K=" << k << " " << method_name(kAll[mi]) << " point "
                        << p << "; ";
                }
            }
        }
    }
    if (pass) out << "all 3 methods strictly decreasing for K=2,5,8 over 0..10 dB";
    return pass;
}

// ---------------------------------------------------------------------------
// 3. At 5 dB with N=12: MSE(a2) nonincreasing in K over {8,20,32} within
//    3 SE, and a1 does not show the same decrease (difference of decrements
//    distinguishable at 3 SE).
// ---------------------------------------------------------------------------
bool criterion_k_diversity(std::ostream& out) {
    const std::vector<double> vars{ebno_to_noise_var(5.0)};
    const Method methods[] = {kA1, kA2};
    std::vector<MseEstimate> a1_est, a2_est;
    for (int k : {8, 20, 32}) {
        const SubfunctionPlan plan = make_plan(k, 1, k / 4);  // T=4 for every K
        const MseGridResult res =
            simulate_mse_grid(methods, channel_config(k, 12, 42), plan, vars, 20000, 120.0, 42, 1);
        a1_est.push_back(res.per_method[0][0]);
        a2_est.push_back(res.per_method[1][0]);
    }

    bool nonincreasing = true;
    for (std::size_t j = 1; j < a2_est.size(); ++j) {
        if (!(a2_est[j].mean <= a2_est[j - 1].mean + 3.0 * combined_se(a2_est[j - 1], a2_est[j]))) {
            nonincreasing = false;
        }
    }
    const double d_a2 = a2_est.front().mean - a2_est.back().mean;
    const double d_a1 = a1_est.front().mean - a1_est.back().mean;
    const double se = std::sqrt(std::pow(combined_se(a2_est.front(), a2_est.back()), 2) +
                                std::pow(combined_se(a1_est.front(), a1_est.back()), 2));
    const bool distinguishable = (d_a2 - d_a1) > 3.0 * se;

    out << "a2 MSE over K: " << a2_est[0].mean << " -> " << a2_est[1].mean << " -> "
        << a2_est[2].mean << "; a1: " << a1_est[0].mean << " -> " << a1_est[2].mean
        << "; decrement diff=" << (d_a2 - d_a1) << " vs 3se=" << 3.0 * se;
    return nonincreasing && distinguishable;
}

// ---------------------------------------------------------------------------
// 4. For K=3 and N in {8,20,32}, per-method normalized MSE varies by less
//    than 5% relative across N at each Eb/N0 point.
// ---------------------------------------------------------------------------
bool criterion_n_invariance(std::ostream& out) {
    const std::vector<double> vars{ebno_to_noise_var(0.0), ebno_to_noise_var(5.0),
                                   ebno_to_noise_var(10.0)};
    const int n_values[] = {8, 20, 32};
    // per method, per ebno point, per N: normalized mean
    double norm_mse[3][3][3];
    for (int ni = 0; ni < 3; ++ni) {
        const int n = n_values[ni];
        const SubfunctionPlan plan = make_plan(3, 1, 3);  // best node per subcarrier
        const MseGridResult res = simulate_mse_grid(
            kAll, channel_config(3, n, 42), plan, vars, 20000, static_cast<double>(n), 42, 1);
        for (int mi = 0; mi < 3; ++mi) {
            for (int p = 0; p < 3; ++p) norm_mse[mi][p][ni] = res.per_method[mi][p].mean / n;
        }
    }

    bool pass = true;
    double worst = 0.0;
    const char* worst_method = "";
    for (int mi = 0; mi < 3; ++mi) {
        for (int p = 0; p < 3; ++p) {
            double lo = norm_mse[mi][p][0], hi = norm_mse[mi][p][0];
            for (int ni = 1; ni < 3; ++ni) {
                lo = std::min(lo, norm_mse[mi][p][ni]);
                hi = std::max(hi, norm_mse[mi][p][ni]);
            }
            const double rel = (hi - lo) / lo;
            if (rel > worst) {
                worst = rel;
                worst_method = method_name(kAll[mi]);
            }
            if (rel >= 0.05) pass = false;
        }
    }
    out << "worst per-method MSE/N variation across N: " << worst * 100 << "% (" << worst_method
        << ", need < 5%)";
    return pass;
}

// ---------------------------------------------------------------------------
// 5. a2 and a3 produce entrywise-identical solutions (within 1e-10) on 1000
//    random channel draws, hence equal analytic MSEs.
// ---------------------------------------------------------------------------
bool criterion_a2_a3_equivalence(std::ostream& out) {
    double worst = 0.0;
    double worst_mse_diff = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const ChannelSet ch = sample_channels(channel_config(4, 8, seed));
        const FilterSolution s2 = design(kA2, ch, 0, 1.0);
        const FilterSolution s3 = design(kA3, ch, 0, 1.0);
        for (std::size_t i = 0; i < 8; ++i) {
            worst = std::max(worst, std::abs(s2.a[i] - s3.a[i]));
            worst = std::max(worst, std::abs(s2.f[i] - s3.f[i]));
        }
        for (int k = 0; k < 4; ++k) {
            for (std::size_t i = 0; i < 8; ++i) {
                worst = std::max(worst, std::abs(s2.b[k][i] - s3.b[k][i]));
            }
        }
        worst = std::max(worst, std::abs(s2.eta - s3.eta));
        const NoiseModel noise{ebno_to_noise_var(3.0)};
        worst_mse_diff = std::max(worst_mse_diff, std::abs(analytic_mse(s2, ch, 0, noise) -
                                                           analytic_mse(s3, ch, 0, noise)));
    }
    out << "max entrywise |a2 - a3| = " << worst << " (need <= 1e-10), max analytic MSE diff = "
        << worst_mse_diff;
    return worst <= 1e-10 && worst_mse_diff <= 1e-10;
}

// ---------------------------------------------------------------------------
// 6. Closed-form solution checks: zero-forcing identity within 1e-10, power
//    tightness max_k ||B_k||^2 = P0 within 1e-9, and no feasible
//    perturbation of the transmit filters improves the analytic MSE by more
//    than 1e-9 (100 draws x 100 perturbations).
// ---------------------------------------------------------------------------
bool criterion_p1_solution(std::ostream& out) {
    const double p0 = 2.0;
    double worst_zf = 0.0;
    double worst_power = 0.0;
    double worst_improvement = 0.0;
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ChannelSet ch = sample_channels(channel_config(5, 6, seed));
        const FilterSolution sol = design(kA2, ch, 0, p0);

        for (int k = 0; k < 5; ++k) {
            const CDiag prod = dmul(dmul(dconj(sol.a), ch.at(0, k)), sol.b[k]);
            for (std::size_t i = 0; i < 6; ++i) {
                worst_zf = std::max(worst_zf, std::abs(prod[i] - cplx{1, 0}));
            }
        }

        double max_power = 0.0;
        for (const CDiag& bk : sol.b) max_power = std::max(max_power, fro_norm_sq(bk));
        worst_power = std::max(worst_power, std::abs(max_power - p0));

        const NoiseModel noise{ebno_to_noise_var(5.0)};
        const double base = analytic_mse(sol, ch, 0, noise);
        for (int rep = 0; rep < 100; ++rep) {
            FilterSolution perturbed = sol;
            for (int k = 0; k < 5; ++k) {
                std::vector<cplx> bk(6);
                for (std::size_t i = 0; i < 6; ++i) {
                    bk[i] = sol.b[k][i] + 0.05 * cplx{u(gen), u(gen)};
                }
                CDiag cand{std::move(bk)};
                const double power = fro_norm_sq(cand);
                if (power > p0) cand = dscale(cand, cplx{std::sqrt(p0 / power), 0.0});
                perturbed.b[k] = std::move(cand);
            }
            worst_improvement =
                std::max(worst_improvement, base - analytic_mse(perturbed, ch, 0, noise));
        }
    }
    out << "max ZF deviation=" << worst_zf << " (<=1e-10), power tightness dev=" << worst_power
        << " (<=1e-9), best perturbation improvement=" << worst_improvement << " (<=1e-9)";
    return worst_zf <= 1e-10 && worst_power <= 1e-9 && worst_improvement <= 1e-9;
}

// ---------------------------------------------------------------------------
// 7. Feedback protocol: with honest feedback signals, ||Z - G|| <= 1e-12
//    ||G|| on 1000 draws, and the feedback-built a3 solution matches the
//    CSI-built one entrywise within 1e-10.
// ---------------------------------------------------------------------------
bool criterion_feedback(std::ostream& out) {
    double worst_residual = 0.0;
    double worst_dev = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const ChannelSet ch = sample_channels(channel_config(4, 6, seed));
        std::vector<CDiag> d;
        for (int k = 0; k < 4; ++k) d.push_back(feedback_signal(ch.at(0, k)));
        const CDiag z = feedback_aggregate(ch, 0, d);
        const CDiag g = effective_channel_g(ch, 0);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < 6; ++i) {
            num += std::norm(z[i] - g[i]);
            den += std::norm(g[i]);
        }
        worst_residual = std::max(worst_residual, std::sqrt(num) / std::sqrt(den));

        const double p0 = 1.5;
        const CDiag f = feedback_postprocess(z);
        const double eta = eta_star(f, ch, 0, p0);
        const CDiag a = dscale(f, cplx{std::sqrt(eta), 0.0});
        const std::vector<CDiag> b = transmit_filters(a, ch, 0);
        const FilterSolution direct = design(kA3, ch, 0, p0);
        worst_dev = std::max(worst_dev, std::abs(eta - direct.eta));
        for (std::size_t i = 0; i < 6; ++i) {
            worst_dev = std::max(worst_dev, std::abs(a[i] - direct.a[i]));
        }
        for (int k = 0; k < 4; ++k) {
            for (std::size_t i = 0; i < 6; ++i) {
                worst_dev = std::max(worst_dev, std::abs(b[k][i] - direct.b[k][i]));
            }
        }
    }
    out << "max ||Z-G||/||G|| = " << worst_residual
        << " (<=1e-12), max feedback-vs-CSI deviation = " << worst_dev << " (<=1e-10)";
    return worst_residual <= 1e-12 && worst_dev <= 1e-10;
}

// ---------------------------------------------------------------------------
// 8. Monte-Carlo consistency: on a K=5, N=6 smoke sweep with 1e4 trials,
//    |mse_mean - analytic_mean| <= 3 * mse_stderr at every grid point.
// ---------------------------------------------------------------------------
bool criterion_mc_consistency(std::ostream& out) {
    const std::vector<double> vars = ebno_grid_vars(0, 2, 10);
    const SubfunctionPlan plan = make_plan(5, 1, 5);
    const MseGridResult res =
        simulate_mse_grid(kAll, channel_config(5, 6, 42), plan, vars, 10000, 120.0, 42, 1);

    bool pass = true;
    double worst_sigma = 0.0;
    for (std::size_t mi = 0; mi < 3; ++mi) {
        for (std::size_t p = 0; p < vars.size(); ++p) {
            const MseEstimate& e = res.per_method[mi][p];
            const double sigmas = std::abs(e.mean - e.analytic) / e.std_error;
            worst_sigma = std::max(worst_sigma, sigmas);
            if (sigmas > 3.0) pass = false;
        }
    }
    out << "worst |mean - analytic| = " << worst_sigma << " stderr across " << 3 * vars.size()
        << " grid points (need <= 3)";
    return pass;
}

// ---------------------------------------------------------------------------
// 9. End-to-end computation: arithmetic and geometric means recovered within
//    1e-9 at zero noise for random readings, K in {2,4,8}, all methods; a
//    grouped subfunction split agrees with the direct computation.
// ---------------------------------------------------------------------------
bool criterion_end_to_end(std::ostream& out) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    double worst = 0.0;
    rng::Stream noise_stream(0);

    for (int k : {2, 4, 8}) {
        const ChannelSet ch = sample_channels(channel_config(k, 8, 100 + k));
        for (Method method : kAll) {
            const FilterSolution sol = design(method, ch, 0, 1.0);
            for (int rep = 0; rep < 20; ++rep) {
                std::vector<double> readings(k);
                double sum = 0.0, logsum = 0.0;
                for (double& r : readings) {
                    r = u(gen);
                    sum += r;
                    logsum += std::log(r);
                }
                const double got_mean = compute_function(arithmetic_mean_spec(k), readings, sol,
                                                         ch, 0, NoiseModel{0.0}, noise_stream);
                worst = std::max(worst, std::abs(got_mean - sum / k));
                const double got_geo = compute_function(geometric_mean_spec(k), readings, sol, ch,
                                                        0, NoiseModel{0.0}, noise_stream);
                worst = std::max(worst, std::abs(got_geo - std::exp(logsum / k)));
            }
        }
    }

    // Subfunction reconstruction: two groups of two, compared to the direct path.
    const ChannelSet ch = sample_channels(channel_config(4, 8, 77));
    const SubfunctionPlan plan = make_plan(4, 2, 1);
    for (Method method : kAll) {
        const FilterSolution sol = design(method, ch, 0, 1.0);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> readings(4);
            for (double& r : readings) r = u(gen);
            const double direct = compute_function(arithmetic_mean_spec(4), readings, sol, ch, 0,
                                                   NoiseModel{0.0}, noise_stream);
            const double grouped = compute_function_grouped(
                arithmetic_mean_spec(4), readings, plan, sol, ch, 0, NoiseModel{0.0}, noise_stream);
            worst = std::max(worst, std::abs(grouped - direct));
        }
    }
    out << "max recovery error = " << worst << " (need <= 1e-9)";
    return worst <= 1e-9;
}

// ---------------------------------------------------------------------------
// 10. Complexity ordering: measured op counts satisfy count(a3) >= count(a2)
//     with count(a1) within 10% of count(a2) for K in {8,32,128}, and the
//     a3/a2 ratio grows with K.
// ---------------------------------------------------------------------------
bool criterion_complexity(std::ostream& out) {
    const std::vector<int> k_list{8, 32, 128};
    const BenchResult res = bench_complexity(k_list, 16, 3, 42);

    bool ordered = true;
    bool a1_close = true;
    std::vector<double> ratios;
    for (int k : k_list) {
        std::uint64_t c1 = 0, c2 = 0, c3 = 0;
        for (const BenchRow& r : res.rows) {
            if (r.nodes != k) continue;
            if (r.method == "a1") c1 = r.op_total;
            if (r.method == "a2") c2 = r.op_total;
            if (r.method == "a3") c3 = r.op_total;
        }
        if (c3 < c2) ordered = false;
        if (std::abs(static_cast<double>(c1) / c2 - 1.0) > 0.10) a1_close = false;
        ratios.push_back(static_cast<double>(c3) / c2);
    }
    const bool growing = ratios[0] < ratios[1] && ratios[1] < ratios[2];
    out << "a3/a2 op-count ratio over K=8,32,128: " << ratios[0] << ", " << ratios[1] << ", "
        << ratios[2] << "; ordered=" << (ordered ? "yes" : "no")
        << ", a1~a2=" << (a1_close ? "yes" : "no") << ", growing=" << (growing ? "yes" : "no");
    return ordered && a1_close && growing;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    const std::vector<Criterion> criteria{
        {1, "headline-gap", criterion_headline_gap},
        {2, "mse-decreasing-in-ebno", criterion_monotone_in_ebno},
        {3, "diversity-gain-in-k", criterion_k_diversity},
        {4, "n-invariance", criterion_n_invariance},
        {5, "a2-a3-equivalence", criterion_a2_a3_equivalence},
        {6, "closed-form-solution", criterion_p1_solution},
        {7, "feedback-protocol", criterion_feedback},
        {8, "monte-carlo-consistency", criterion_mc_consistency},
        {9, "end-to-end-computation", criterion_end_to_end},
        {10, "complexity-ordering", criterion_complexity},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        std::ostringstream detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        std::ostringstream line;
        line << "criterion " << (c.id < 10 ? "0" : "") << c.id << " " << c.name << " ";
        std::cout << line.str() << std::string(line.str().size() < 44 ? 44 - line.str().size() : 1, '.')
                  << (pass ? " PASS  " : " FAIL  ") << detail.str() << '\n';
        if (!pass) ++failures;
    }
    return failures;
}
