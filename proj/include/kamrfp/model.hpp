#pragma once

#include "kamrfp/maxflow.hpp"
#include "kamrfp/network.hpp"
#include "kamrfp/simplex.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace kamrfp {

/// All k-subsets of the non-dummy arc ids 1..m, in lexicographic order over
/// ascending-sorted subsets. The dummy arc is never destroyable.
class ScenarioIndex {
public:
    ScenarioIndex(int arc_count, int k);

    std::size_t count() const { return subsets_.size(); }
    int subset_size() const { return k_; }
    /// i is 0-based; the returned ids are ascending.
    const std::vector<int>& subset(std::size_t i) const { return subsets_[i]; }
    /// Inverse lookup; the input need not be sorted. Throws on unknown subset.
    std::size_t index_of(std::vector<int> arcs) const;

    /// C(m, k); throws std::overflow_error if it does not fit in 64 bits.
    static unsigned long long binomial(int m, int k);

private:
    int k_;
    std::vector<std::vector<int>> subsets_;
};

enum class ObjectiveMode { TwoPhase, Combined };

/// Maps LP variable indices back to their semantic role.
class ModelMap {
public:
    ModelMap(int arc_count, std::shared_ptr<const ScenarioIndex> scenarios);

    int var_phi(int arc_id) const { return arc_id - 1; }  // arc_id in 1..m+1
    int var_theta() const { return m_ + 1; }
    /// Variable of phi^i on arc `arc_id`; the arc must survive scenario i.
    int var_scenario(std::size_t scenario, int arc_id) const;
    std::size_t total_variables() const;
    std::size_t scenario_count() const { return scenarios_->count(); }
    const ScenarioIndex& scenarios() const { return *scenarios_; }

private:
    int m_;
    std::shared_ptr<const ScenarioIndex> scenarios_;
};

struct Solution {
    Flow flow;
    Rat fstar;
    Rat theta;
    Rat loss;
    ObjectiveMode mode = ObjectiveMode::TwoPhase;
    bool certified = false;
    std::vector<int> worst_attack;  // sorted arc ids, empty when loss is 0
};

/// Model too large for the exact dense-ish simplex at desk scale. The
/// scenario expansion grows as O(m^{k+1}); raise the cap knowingly.
struct ModelTooLarge : std::runtime_error {
    ModelTooLarge(std::size_t variables, std::size_t cap)
        : std::runtime_error(
              "scenario-expanded LP needs " + std::to_string(variables) +
              " variables, above the cap of " + std::to_string(cap) +
              " (the expansion grows as O(m^(k+1)); raise --max-vars to override)"),
          variables(variables),
          cap(cap) {}
    std::size_t variables;
    std::size_t cap;
};

struct BuildLimits {
    std::size_t max_variables = 50000;
};

/// Scenario-expanded LP: conservation and capacities for phi, per-scenario
/// adaptive-flow conservation, the couplings phi^i <= phi, and phi^i_ts >= theta.
/// TwoPhase pins phi_ts = fstar and maximizes theta; Combined maximizes
/// phi_ts + theta.
std::pair<LinearProgram, ModelMap> build_model(const Network& net, int k,
                                               ObjectiveMode mode,
                                               const std::optional<Rat>& fstar,
                                               const BuildLimits& limits = {});

struct SolveOptions {
    ObjectiveMode mode = ObjectiveMode::TwoPhase;
    bool certify = true;
    std::size_t max_variables = 50000;
    unsigned long long attack_budget = 1'000'000;
    unsigned attack_threads = 1;
};

/// Wall-clock milliseconds per solve phase, for reporting.
struct SolveTimings {
    double fstar_ms = 0;
    double build_ms = 0;
    double solve_ms = 0;
    double certify_ms = 0;
};

/// End-to-end solve: baseline max flow, LP build + exact solve, attack-oracle
/// certification. Throws ModelTooLarge / BudgetExceeded-as-uncertified per
/// the options; an LP status other than Optimal is a logic error.
Solution solve_kamrfp(const Network& net, int k, const SolveOptions& options = {},
                      SolveTimings* timings = nullptr);

}  // namespace kamrfp
