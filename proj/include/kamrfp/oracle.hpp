#pragma once

#include "kamrfp/model.hpp"
#include "kamrfp/network.hpp"

#include <stdexcept>
#include <vector>

namespace kamrfp {

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(unsigned long long subsets, unsigned long long budget)
        : std::runtime_error("attack enumeration needs " + std::to_string(subsets) +
                             " subsets, above the budget of " + std::to_string(budget)),
          subsets(subsets),
          budget(budget) {}
    unsigned long long subsets;
    unsigned long long budget;
};

struct AttackReport {
    Rat attacked_flow_value;        // phi_ts of the attacked flow
    std::vector<int> worst_attack;  // ascending arc ids, lexicographic minimizer
    Rat residual;                   // min over k-subsets of the adaptive value
    Rat loss;                       // attacked_flow_value - residual
    unsigned long long subsets_evaluated = 0;
};

struct OracleOptions {
    unsigned long long budget = 1'000'000;
    /// Worker threads for the subset enumeration; results are identical to
    /// the sequential run (the tie-break is applied in the final reduce).
    unsigned threads = 1;
};

/// Exhaustive adversary: evaluates every k-subset of non-dummy arcs and
/// returns the minimum adaptive residual, ties broken by lexicographically
/// smallest subset.
AttackReport worst_case(const Network& net, const Flow& phi, int k,
                        const OracleOptions& options = {});

/// Cross-checks sol.theta against the exhaustive adversary on sol.flow and
/// stamps sol.certified / sol.worst_attack. On budget exhaustion the
/// solution is left uncertified and false is returned.
bool certify(const Network& net, Solution& sol, int k, const OracleOptions& options = {});

/// k=1 cross-check: bisects for the smallest lambda such that capping every
/// arc at lambda still admits a flow of value F*. That lambda* is the least
/// achievable maximum arc flow over all maximum flows, so F* - theta(k=1)
/// should equal it. Approximate to `tolerance`; requires F* > 0.
Rat k1_bisection_oracle(const Network& net, const Rat& tolerance = Rat(1, 1000000));

}  // namespace kamrfp
