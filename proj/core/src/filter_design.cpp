// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac/filter_design.hpp"

#include <cmath>
#include <stdexcept>

#include "comac/op_count.hpp"

namespace comac {

const char* method_name(Method m) {
    switch (m) {
        case Method::kA1AvgSumChannel: return "a1";
        case Method::kA2Eigen: return "a2";
        case Method::kA3EffectiveChannel: return "a3";
    }
    return "?";
}

CDiag unitary_a1(const ChannelSet& ch, int m) {
    // Phase of the average sum channel (1/K) H_s; the 1/K scale cancels in
    // the phase, zero entries map to 1.
    const CDiag hs = sum_channel(ch, m);
    const std::size_t n = hs.dim();
    std::vector<cplx> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = std::abs(hs[i]);
        f[i] = mag > 0.0 ? hs[i] / mag : cplx{1.0, 0.0};
    }
    ops::mul(2 * n);
    ops::add(n);
    ops::sqrt(n);
    ops::div(2 * n);
    return CDiag(std::move(f));
}

CDiag unitary_a2(const ChannelSet& ch, int m) {
    const CDiag hs = sum_channel(ch, m);
    const EigPair eig = eig_diag(hs);
    return eig.q;
}

CDiag unitary_a3(const ChannelSet& ch, int m) {
    return svd_diag(effective_channel_g(ch, m)).v;
}

double eta_star(const CDiag& f, const ChannelSet& ch, int m, double p0) {
    return eta_star(f, ch, m, p0,
                    SubcarrierAssignment::full(ch.subcarriers(), ch.nodes()));
}

double eta_star(const CDiag& f, const ChannelSet& ch, int m, double p0,
                const SubcarrierAssignment& assignment) {
    if (p0 <= 0.0) throw std::invalid_argument("eta_star: P0 must be > 0");
    if (f.dim() != static_cast<std::size_t>(ch.subcarriers())) {
        throw std::invalid_argument("eta_star: unitary dimension mismatch");
    }
    const int n = ch.subcarriers();
    double worst = 0.0;
    for (int k = 0; k < ch.nodes(); ++k) {
        const CDiag& h = ch.at(m, k);
        double tr_inv = 0.0;
        std::uint64_t slots = 0;
        for (int i = 0; i < n; ++i) {
            if (!assignment.assigned(i, k)) continue;
            const cplx fk = std::conj(f[i]) * h[i];
            const double g = std::norm(fk);
            if (g <= kDefaultSingularEps * kDefaultSingularEps) {
                throw NearSingularError(static_cast<std::size_t>(i), std::sqrt(g), k);
            }
            tr_inv += 1.0 / g;
            ++slots;
        }
        ops::mul(6 * slots);
        ops::add(3 * slots);
        ops::div(slots);
        worst = std::max(worst, tr_inv / p0);
    }
    return worst;
}

double eta_average_channel(const SubcarrierAssignment& assignment, double p0) {
    if (p0 <= 0.0) throw std::invalid_argument("eta_average_channel: P0 must be > 0");
    return static_cast<double>(assignment.total_slots()) / p0;
}

std::vector<CDiag> transmit_filters(const CDiag& a, const ChannelSet& ch, int m) {
    return transmit_filters(a, ch, m,
                            SubcarrierAssignment::full(ch.subcarriers(), ch.nodes()));
}

std::vector<CDiag> transmit_filters(const CDiag& a, const ChannelSet& ch, int m,
                                    const SubcarrierAssignment& assignment) {
    if (a.dim() != static_cast<std::size_t>(ch.subcarriers())) {
        throw std::invalid_argument("transmit_filters: receive filter dimension mismatch");
    }
    const int n = ch.subcarriers();
    std::vector<CDiag> b;
    b.reserve(ch.nodes());
    for (int k = 0; k < ch.nodes(); ++k) {
        const CDiag& h = ch.at(m, k);
        std::vector<cplx> bk(n, cplx{0.0, 0.0});
        for (int i = 0; i < n; ++i) {
            if (!assignment.assigned(i, k)) continue;
            // B_k = A_k^H (A_k A_k^H)^{-1} entrywise, A_k = A^H H_k.
            const cplx ak = std::conj(a[i]) * h[i];
            const double g = std::norm(ak);
            if (g <= kDefaultSingularEps * kDefaultSingularEps) {
                throw NearSingularError(static_cast<std::size_t>(i), std::sqrt(g), k);
            }
            bk[i] = std::conj(ak) / g;
        }
        b.emplace_back(std::move(bk));
    }
    return b;
}

FilterSolution design(Method method, const ChannelSet& ch, int m, double p0) {
    return design(method, ch, m, p0,
                  SubcarrierAssignment::full(ch.subcarriers(), ch.nodes()));
}

FilterSolution design(Method method, const ChannelSet& ch, int m, double p0,
                      const SubcarrierAssignment& assignment) {
    CDiag f;
    switch (method) {
        case Method::kA1AvgSumChannel: f = unitary_a1(ch, m); break;
        case Method::kA2Eigen: f = unitary_a2(ch, m); break;
        case Method::kA3EffectiveChannel: f = unitary_a3(ch, m); break;
    }
    double eta = eta_star(f, ch, m, p0, assignment);
    if (method == Method::kA1AvgSumChannel) {
        // The baseline provisions for the ensemble-average channel rather
        // than the realized per-node worst case; the max keeps it feasible.
        eta = std::max(eta, eta_average_channel(assignment, p0));
    }
    const CDiag a = dscale(f, cplx{std::sqrt(eta), 0.0});
    FilterSolution sol;
    sol.method = method;
    sol.f = std::move(f);
    sol.eta = eta;
    sol.b = transmit_filters(a, ch, m, assignment);
    sol.a = a;
    return sol;
}

CDiag feedback_signal(const CDiag& h_k, double eps) {
    const SvdTriple svd = svd_diag(h_k);
    const double lambda_min = min_singular_sq(svd.sigma);
    const std::size_t n = h_k.dim();
    std::vector<cplx> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sigma = svd.sigma[i].real();
        if (sigma <= eps) throw NearSingularError(i, sigma);
        d[i] = lambda_min * svd.v[i] * std::conj(svd.u[i]) / sigma;
    }
    ops::mul(8 * n);
    ops::add(4 * n);
    ops::div(2 * n);
    return CDiag(std::move(d));
}

CDiag feedback_aggregate(const ChannelSet& ch, int m, const std::vector<CDiag>& d) {
    if (static_cast<int>(d.size()) != ch.nodes()) {
        throw std::invalid_argument("feedback_aggregate: one feedback signal per node required");
    }
    CDiag z(static_cast<std::size_t>(ch.subcarriers()));
    for (int k = 0; k < ch.nodes(); ++k) z = dadd(z, dmul(ch.at(m, k), d[k]));
    return z;
}

CDiag feedback_postprocess(const CDiag& z) {
    return svd_diag(z).u;
}

}  // namespace comac
