// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace comac {

IndivisiblePlanError::IndivisiblePlanError(int numerator, int divisor)
    : std::invalid_argument("subfunction plan: " + std::to_string(divisor) +
                            " does not divide " + std::to_string(numerator)),
      numerator_(numerator),
      divisor_(divisor) {}

SubfunctionPlan make_plan(int nodes, int group_size, int carrier_split) {
    if (nodes < 1 || group_size < 1 || carrier_split < 1) {
        throw std::invalid_argument("make_plan: K, M, D must be positive");
    }
    if (nodes % group_size != 0) throw IndivisiblePlanError(nodes, group_size);
    const int groups = nodes / group_size;
    if (groups % carrier_split != 0) throw IndivisiblePlanError(groups, carrier_split);
    SubfunctionPlan plan;
    plan.nodes = nodes;
    plan.group_size = group_size;
    plan.groups = groups;
    plan.carrier_split = carrier_split;
    plan.per_carrier = groups / carrier_split;
    plan.active = plan.per_carrier * group_size;
    return plan;
}

std::vector<int> select_nodes(std::span<const double> gains, int t) {
    if (t < 0 || t > static_cast<int>(gains.size())) {
        throw std::out_of_range("select_nodes: T out of range");
    }
    std::vector<int> idx(gains.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (gains[a] != gains[b]) return gains[a] > gains[b];
        return a < b;
    });
    idx.resize(t);
    return idx;
}

SubcarrierAssignment SubcarrierAssignment::from_gains(const ChannelSet& ch, int m,
                                                      const SubfunctionPlan& plan) {
    if (plan.nodes != ch.nodes()) {
        throw std::invalid_argument("SubcarrierAssignment: plan/channel node count mismatch");
    }
    const int n = ch.subcarriers();
    const int k_total = ch.nodes();
    SubcarrierAssignment asg(k_total, plan);
    asg.active_.resize(n);
    asg.groups_.resize(n);
    asg.mask_.assign(n, std::vector<char>(k_total, 0));

    std::vector<double> gain(k_total);
    std::vector<double> group_score(plan.groups);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < k_total; ++k) gain[k] = std::abs(ch.at(m, k)[i]);
        // A group is only as strong as its weakest member; schedule the L
        // groups whose weakest member gain is largest.
        for (int b = 0; b < plan.groups; ++b) {
            double weakest = std::numeric_limits<double>::infinity();
            for (int j = 0; j < plan.group_size; ++j) {
                weakest = std::min(weakest, gain[b * plan.group_size + j]);
            }
            group_score[b] = weakest;
        }
        std::vector<int> chosen = select_nodes(group_score, plan.per_carrier);
        std::sort(chosen.begin(), chosen.end());
        asg.groups_[i] = chosen;

        std::vector<int>& act = asg.active_[i];
        act.reserve(plan.active);
        for (int b : chosen) {
            for (int j = 0; j < plan.group_size; ++j) {
                const int node = b * plan.group_size + j;
                act.push_back(node);
                asg.mask_[i][node] = 1;
            }
        }
        std::stable_sort(act.begin(), act.end(), [&](int a, int b2) {
            if (gain[a] != gain[b2]) return gain[a] > gain[b2];
            return a < b2;
        });
    }
    return asg;
}

SubcarrierAssignment SubcarrierAssignment::full(int subcarriers, int nodes) {
    SubfunctionPlan plan = make_plan(nodes, nodes, 1);
    SubcarrierAssignment asg(nodes, plan);
    std::vector<int> all(nodes);
    std::iota(all.begin(), all.end(), 0);
    asg.active_.assign(subcarriers, all);
    asg.groups_.assign(subcarriers, std::vector<int>{0});
    asg.mask_.assign(subcarriers, std::vector<char>(nodes, 1));
    return asg;
}

bool SubcarrierAssignment::assigned(int subcarrier, int node) const {
    return mask_[subcarrier][node] != 0;
}

const std::vector<int>& SubcarrierAssignment::active(int subcarrier) const {
    return active_[subcarrier];
}

const std::vector<int>& SubcarrierAssignment::scheduled_groups(int subcarrier) const {
    return groups_[subcarrier];
}

int SubcarrierAssignment::total_slots() const {
    int total = 0;
    for (const auto& a : active_) total += static_cast<int>(a.size());
    return total;
}

std::vector<CDiag> assemble_combined(const std::vector<std::vector<CDiag>>& symbols,
                                     const std::vector<std::vector<CDiag>>& powers,
                                     const SubcarrierAssignment& assignment) {
    const int n = assignment.subcarriers();
    const int k_total = assignment.nodes();
    const int b_total = assignment.plan().groups;
    if (static_cast<int>(symbols.size()) != k_total ||
        static_cast<int>(powers.size()) != k_total) {
        throw std::invalid_argument("assemble_combined: need one symbol/power row per node");
    }

    std::vector<CDiag> combined;
    combined.reserve(k_total);
    for (int k = 0; k < k_total; ++k) {
        if (static_cast<int>(symbols[k].size()) != b_total ||
            static_cast<int>(powers[k].size()) != b_total) {
            throw std::invalid_argument("assemble_combined: need one matrix per subfunction");
        }
        std::vector<cplx> out(n, cplx{0.0, 0.0});
        for (int b = 0; b < b_total; ++b) {
            const CDiag& x = symbols[k][b];
            const CDiag& v = powers[k][b];
            if (x.dim() != static_cast<std::size_t>(n) || v.dim() != static_cast<std::size_t>(n)) {
                throw std::invalid_argument("assemble_combined: dimension mismatch");
            }
            const bool owns = assignment.group_of(k) == b;
            for (int i = 0; i < n; ++i) {
                const bool slot_active = owns && assignment.assigned(i, k) &&
                                         std::find(assignment.scheduled_groups(i).begin(),
                                                   assignment.scheduled_groups(i).end(),
                                                   b) != assignment.scheduled_groups(i).end();
                const cplx contribution = v[i] * x[i];
                if (!slot_active) {
                    if (std::abs(x[i]) != 0.0) {
                        throw std::invalid_argument(
                            "assemble_combined: nonzero symbol on unassigned subcarrier " +
                            std::to_string(i) + " (node " + std::to_string(k) + ")");
                    }
                    continue;
                }
                // Unit-variance normalization: with unit-power symbol
                // ensembles, dividing by |v| restores E{X_k X_k^H} = I on
                // the assigned slots, so any uniform power scaling is moot.
                const double vm = std::abs(v[i]);
                out[i] += vm > 0.0 ? contribution / vm : contribution;
            }
        }
        combined.emplace_back(std::move(out));
    }
    return combined;
}

}  // namespace comac
