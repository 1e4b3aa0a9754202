#pragma once

#include "kamrfp/network.hpp"

#include <set>
#include <vector>

namespace kamrfp {

struct MaxFlowResult {
    Flow flow;
    Rat value;
    /// Sorted non-dummy arc ids of a minimum cut (source side -> sink side)
    /// in the network the flow was computed on.
    std::vector<int> min_cut;
};

struct MaxFlowOptions {
    /// When set, replaces arc capacities; indexed by arc id - 1, size m+1
    /// (the dummy entry is ignored, the dummy stays unbounded).
    const std::vector<Rat>* capacity_override = nullptr;
    /// Masked arcs: treated as absent, ids stay stable. Never the dummy.
    const std::set<int>* deleted = nullptr;
    /// Permutation of 1..m controlling the arc scan order of the BFS, for
    /// exploring alternative maximum flows. Default is id order.
    const std::vector<int>* arc_order = nullptr;
};

/// Shortest-augmenting-path maximum flow in exact rational arithmetic.
/// Deterministic: arcs are scanned in id order (or `arc_order`), so equal
/// inputs give identical flows. No s-t path yields value 0.
MaxFlowResult max_flow(const Network& net, const MaxFlowOptions& opt = {});

/// Best adaptive flow value after deleting `deleted`: the maximum flow of
/// the surviving network with capacities set to phi. Rejects infeasible phi.
Rat residual_value(const Network& net, const Flow& phi, const std::set<int>& deleted);

/// Minimum number of non-dummy arcs whose removal disconnects s from t
/// (max flow with all capacities 1).
int min_cut_cardinality(const Network& net);

}  // namespace kamrfp
