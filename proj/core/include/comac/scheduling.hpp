// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_SCHEDULING_HPP
#define COMAC_SCHEDULING_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "comac/cdiag.hpp"
#include "comac/channel.hpp"

namespace comac {

/// Thrown by make_plan when the requested split does not divide evenly.
class IndivisiblePlanError : public std::invalid_argument {
public:
    IndivisiblePlanError(int numerator, int divisor);
    int numerator() const { return numerator_; }
    int divisor() const { return divisor_; }

private:
    int numerator_;
    int divisor_;
};

/// Parameters of the subfunction split: the desired function over K nodes is
/// broken into B = K/M parts of M nodes each; L = B/D of those parts are
/// active on every subcarrier, engaging T = L*M nodes per subcarrier.
struct SubfunctionPlan {
    int nodes = 1;         // K
    int group_size = 1;    // M
    int groups = 1;        // B = K / M
    int carrier_split = 1; // D
    int per_carrier = 1;   // L = B / D
    int active = 1;        // T = L * M
};

SubfunctionPlan make_plan(int nodes, int group_size, int carrier_split);

/// Indices of the t largest gains, in descending gain order; ties broken by
/// ascending node index.
std::vector<int> select_nodes(std::span<const double> gains, int t);

/// Which nodes participate on which subcarrier for one OFDM symbol. Nodes
/// are partitioned into the plan's B fixed groups by index; per subcarrier
/// the L groups with the strongest weakest-member gain are scheduled, which
/// for M = 1 is exactly per-subcarrier selection of the T strongest nodes.
class SubcarrierAssignment {
public:
    static SubcarrierAssignment from_gains(const ChannelSet& ch, int m,
                                           const SubfunctionPlan& plan);
    /// Every node active on every subcarrier (the M = K, D = 1 plan).
    static SubcarrierAssignment full(int subcarriers, int nodes);

    int subcarriers() const { return static_cast<int>(active_.size()); }
    int nodes() const { return nodes_; }
    const SubfunctionPlan& plan() const { return plan_; }

    bool assigned(int subcarrier, int node) const;
    /// Active nodes on a subcarrier, descending channel gain.
    const std::vector<int>& active(int subcarrier) const;
    /// Scheduled group ids on a subcarrier (size L).
    const std::vector<int>& scheduled_groups(int subcarrier) const;
    /// Total number of active (subcarrier, node) slots, i.e. N * T.
    int total_slots() const;
    /// Group id that owns a node.
    int group_of(int node) const { return node / plan_.group_size; }

private:
    SubcarrierAssignment(int nodes, SubfunctionPlan plan) : nodes_(nodes), plan_(plan) {}

    int nodes_ = 0;
    SubfunctionPlan plan_;
    std::vector<std::vector<int>> active_;   // per subcarrier, descending gain
    std::vector<std::vector<int>> groups_;   // per subcarrier, chosen group ids
    std::vector<std::vector<char>> mask_;    // per subcarrier, per node
};

/// Combines per-subfunction symbol matrices X_k^b with their power
/// allocations V_k^b into the transmitted matrix X_k = sum_b V_k^b X_k^b,
/// zero outside the node's assigned subcarriers, rescaled so that unit-power
/// symbol ensembles keep E{X_k X_k^H} = I on the assigned slots.
/// symbols[k][b] and powers[k][b] are indexed by node and group id.
std::vector<CDiag> assemble_combined(const std::vector<std::vector<CDiag>>& symbols,
                                     const std::vector<std::vector<CDiag>>& powers,
                                     const SubcarrierAssignment& assignment);

}  // namespace comac

#endif  // COMAC_SCHEDULING_HPP
