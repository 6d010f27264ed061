// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_FILTER_DESIGN_HPP
#define COMAC_FILTER_DESIGN_HPP

#include <vector>

#include "comac/cdiag.hpp"
#include "comac/channel.hpp"
#include "comac/scheduling.hpp"

namespace comac {

/// Receive-filter construction strategy.
///  a1: phase of the (average) sum channel plus an average-gain denoising
///      provision, clamped to the feasible region. No per-node adaptation.
///  a2: eigenbasis of the sum channel H_s = sum_k H_k.
///  a3: right singular basis of the effective channel G built from the
///      per-node SVDs.
enum class Method { kA1AvgSumChannel, kA2Eigen, kA3EffectiveChannel };

const char* method_name(Method m);  // "a1" / "a2" / "a3"

/// One complete transceiver design: receive filter A = sqrt(eta) * F with
/// F^H F = I, per-node transmit filters B_k with ||B_k||^2 <= P0, and the
/// denoising factor eta.
struct FilterSolution {
    Method method = Method::kA2Eigen;
    CDiag a;                 // receive filter
    std::vector<CDiag> b;    // transmit filters, one per node
    double eta = 0.0;        // denoising factor, > 0
    CDiag f;                 // unitary part of A
};

/// Feedback round: per-node feedback signals D_k and the aggregated
/// observation Z = sum_k H_k D_k received noiselessly at the access point.
struct FeedbackRecord {
    std::vector<CDiag> d;
    CDiag z;
};

CDiag unitary_a1(const ChannelSet& ch, int m);
CDiag unitary_a2(const ChannelSet& ch, int m);
CDiag unitary_a3(const ChannelSet& ch, int m);

/// Smallest feasible denoising factor for unitary part f:
/// eta* = max_k (1/P0) tr[(F_k F_k^H)^{-1}] with F_k = f^H H_k, the sum
/// running over the node's assigned subcarriers.
double eta_star(const CDiag& f, const ChannelSet& ch, int m, double p0);
double eta_star(const CDiag& f, const ChannelSet& ch, int m, double p0,
                const SubcarrierAssignment& assignment);

/// Denoising factor of a design that models every active slot with the
/// ensemble-average unit channel gain: one unit of inverse-gain provision
/// per active (subcarrier, node) slot, N*T/P0 in total. The a1 baseline
/// uses the larger of this and eta*, which keeps it feasible.
double eta_average_channel(const SubcarrierAssignment& assignment, double p0);

/// Zero-forcing transmit filters B_k = A_k^H (A_k A_k^H)^{-1} with
/// A_k = A^H H_k; entries outside a node's assigned subcarriers are zero.
std::vector<CDiag> transmit_filters(const CDiag& a, const ChannelSet& ch, int m);
std::vector<CDiag> transmit_filters(const CDiag& a, const ChannelSet& ch, int m,
                                    const SubcarrierAssignment& assignment);

/// Full design: picks F by method, computes the denoising factor, sets
/// A = sqrt(eta) F and derives the transmit filters from A.
FilterSolution design(Method method, const ChannelSet& ch, int m, double p0);
FilterSolution design(Method method, const ChannelSet& ch, int m, double p0,
                      const SubcarrierAssignment& assignment);

/// Per-node feedback signal D_k = lambda_min(Sigma_k^2) V_k Sigma_k^{-1} U_k^H,
/// a function of the node's own channel only; satisfies
/// H_k D_k = lambda_min(Sigma_k^2) I.
CDiag feedback_signal(const CDiag& h_k, double eps = kDefaultSingularEps);

/// Noiseless aggregation Z = sum_k H_k D_k.
CDiag feedback_aggregate(const ChannelSet& ch, int m, const std::vector<CDiag>& d);

/// Receive-side post-processing of the aggregated observation: the left
/// unitary factor of Z. With honest feedback signals Z = G and this equals
/// the a3 unitary.
CDiag feedback_postprocess(const CDiag& z);

}  // namespace comac

#endif  // COMAC_FILTER_DESIGN_HPP
