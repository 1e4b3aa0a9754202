#include "kamrfp/model.hpp"

#include "kamrfp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace kamrfp {

ScenarioIndex::ScenarioIndex(int arc_count, int k) : k_(k) {
    if (k < 1 || k > arc_count) {
        throw std::invalid_argument("k out of range [1," + std::to_string(arc_count) + "]");
    }
    const unsigned long long total = binomial(arc_count, k);
    subsets_.reserve(total);
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i + 1;
    for (;;) {
        subsets_.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[pos] == arc_count - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int j = pos + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

std::size_t ScenarioIndex::index_of(std::vector<int> arcs) const {
    std::sort(arcs.begin(), arcs.end());
    auto it = std::lower_bound(subsets_.begin(), subsets_.end(), arcs);
    if (it == subsets_.end() || *it != arcs) {
        throw std::invalid_argument("unknown attack subset");
    }
    return static_cast<std::size_t>(it - subsets_.begin());
}

unsigned long long ScenarioIndex::binomial(int m, int k) {
    if (k < 0 || k > m) return 0;
    k = std::min(k, m - k);
    unsigned long long result = 1;
    for (int i = 1; i <= k; ++i) {
        const unsigned long long factor = static_cast<unsigned long long>(m - k + i);
        if (result > (~0ULL) / factor) throw std::overflow_error("binomial overflows 64 bits");
        result = result * factor / i;  // exact: result*(m-k+i) divisible by i here
    }
    return result;
}

ModelMap::ModelMap(int arc_count, std::shared_ptr<const ScenarioIndex> scenarios)
    : m_(arc_count), scenarios_(std::move(scenarios)) {}

int ModelMap::var_scenario(std::size_t scenario, int arc_id) const {
    const auto& gone = scenarios_->subset(scenario);
    int skipped = 0;
    for (int a : gone) {
        if (a == arc_id) throw std::logic_error("arc does not survive this scenario");
        if (a < arc_id) ++skipped;
    }
    const int block = m_ + 1 - scenarios_->subset_size();
    const int base = m_ + 2;  // after phi_1..phi_{m+1} and theta
    return base + static_cast<int>(scenario) * block + (arc_id - 1 - skipped);
}

std::size_t ModelMap::total_variables() const {
    const std::size_t block = static_cast<std::size_t>(m_ + 1 - scenarios_->subset_size());
    return static_cast<std::size_t>(m_ + 2) + scenarios_->count() * block;
}

std::pair<LinearProgram, ModelMap> build_model(const Network& net, int k,
                                               ObjectiveMode mode,
                                               const std::optional<Rat>& fstar,
                                               const BuildLimits& limits) {
    const int m = net.arc_count();
    if (k < 1 || k > m) {
        throw std::invalid_argument("k out of range [1," + std::to_string(m) + "]");
    }
    if (mode == ObjectiveMode::TwoPhase && !fstar) {
        throw std::invalid_argument("two-phase mode requires the baseline flow value");
    }
    const unsigned long long count = ScenarioIndex::binomial(m, k);
    const unsigned long long scenario_vars =
        count * static_cast<unsigned long long>(m + 1 - k);
    if (scenario_vars > limits.max_variables) {
        throw ModelTooLarge(static_cast<std::size_t>(m + 2 + scenario_vars),
                            limits.max_variables);
    }

    auto scenarios = std::make_shared<const ScenarioIndex>(m, k);
    ModelMap map(m, scenarios);

    LinearProgram lp;
    lp.num_vars = static_cast<int>(map.total_variables());
    lp.objective.assign(lp.num_vars, Rat(0));
    lp.upper_bounds.assign(lp.num_vars, std::nullopt);
    lp.var_names.assign(lp.num_vars, "");

    const int dummy = net.dummy_arc_id();
    for (int a = 1; a <= dummy; ++a) lp.var_names[map.var_phi(a)] = "phi_a" + std::to_string(a);
    lp.var_names[map.var_theta()] = "theta";

    if (mode == ObjectiveMode::Combined) {
        lp.objective[map.var_phi(dummy)] = 1;
        lp.objective[map.var_theta()] = 1;
    } else {
        lp.objective[map.var_theta()] = 1;
    }

    // Conservation of phi at every vertex (dummy arc included).
    for (int v = 1; v <= net.vertex_count(); ++v) {
        LinearProgram::Row row;
        row.rel = Relation::Eq;
        row.rhs = 0;
        for (int a = 1; a <= dummy; ++a) {
            const Arc& arc = net.arc(a);
            if (arc.tail == v) row.coeffs.push_back({map.var_phi(a), Rat(1)});
            else if (arc.head == v) row.coeffs.push_back({map.var_phi(a), Rat(-1)});
        }
        lp.rows.push_back(std::move(row));
    }
    // Capacities (the dummy stays free above).
    for (int a = 1; a <= m; ++a) lp.upper_bounds[map.var_phi(a)] = *net.arc(a).capacity;

    if (mode == ObjectiveMode::TwoPhase) {
        lp.rows.push_back({{{map.var_phi(dummy), Rat(1)}}, Relation::Eq, *fstar});
    }

    for (std::size_t i = 0; i < scenarios->count(); ++i) {
        const auto& gone = scenarios->subset(i);
        auto survives = [&](int a) {
            return !std::binary_search(gone.begin(), gone.end(), a);
        };
        for (int a = 1; a <= dummy; ++a) {
            if (!survives(a)) continue;
            const int va = map.var_scenario(i, a);
            lp.var_names[va] = "s" + std::to_string(i) + "_phi_a" + std::to_string(a);
            // Coupling: the adaptive flow may not exceed the initial one.
            lp.rows.push_back({{{va, Rat(1)}, {map.var_phi(a), Rat(-1)}},
                               Relation::LessEq,
                               Rat(0)});
        }
        // Conservation of phi^i over the surviving arcs.
        for (int v = 1; v <= net.vertex_count(); ++v) {
            LinearProgram::Row row;
            row.rel = Relation::Eq;
            row.rhs = 0;
            for (int a = 1; a <= dummy; ++a) {
                if (!survives(a)) continue;
                const Arc& arc = net.arc(a);
                if (arc.tail == v) row.coeffs.push_back({map.var_scenario(i, a), Rat(1)});
                else if (arc.head == v) row.coeffs.push_back({map.var_scenario(i, a), Rat(-1)});
            }
            lp.rows.push_back(std::move(row));
        }
        // Guaranteed value: phi^i_ts >= theta.
        lp.rows.push_back({{{map.var_scenario(i, dummy), Rat(1)}, {map.var_theta(), Rat(-1)}},
                           Relation::GreaterEq,
                           Rat(0)});
    }

    return {std::move(lp), std::move(map)};
}

namespace {

class PhaseTimer {
public:
    explicit PhaseTimer(double* slot) : slot_(slot), start_(clock::now()) {}
    ~PhaseTimer() {
        if (slot_) {
            *slot_ = std::chrono::duration<double, std::milli>(clock::now() - start_).count();
        }
    }

private:
    using clock = std::chrono::steady_clock;
    double* slot_;
    clock::time_point start_;
};

}  // namespace

Solution solve_kamrfp(const Network& net, int k, const SolveOptions& options,
                      SolveTimings* timings) {
    const int m = net.arc_count();
    if (k < 1 || k > m) {
        throw std::invalid_argument("k out of range [1," + std::to_string(m) + "]");
    }

    std::optional<MaxFlowResult> base_opt;
    {
        PhaseTimer timer(timings ? &timings->fstar_ms : nullptr);
        base_opt = max_flow(net);
    }
    const MaxFlowResult& base = *base_opt;
    Solution sol;
    sol.mode = options.mode;
    sol.fstar = base.value;

    if (base.value == 0) {
        // No s-t path: nothing to protect, skip the LP entirely.
        sol.flow = Flow(static_cast<std::size_t>(m) + 1);
        sol.theta = 0;
        sol.loss = 0;
        sol.certified = true;
        return sol;
    }

    std::optional<Rat> fstar;
    if (options.mode == ObjectiveMode::TwoPhase) fstar = base.value;
    std::optional<std::pair<LinearProgram, ModelMap>> built;
    {
        PhaseTimer timer(timings ? &timings->build_ms : nullptr);
        built = build_model(net, k, options.mode, fstar, {options.max_variables});
    }
    const auto& [lp, map] = *built;

    std::optional<LPOutcome> outcome_opt;
    {
        PhaseTimer timer(timings ? &timings->solve_ms : nullptr);
        outcome_opt = solve_lp(lp);
        if (outcome_opt->status == LPStatus::Optimal) {
            // The theta-optimal face is often degenerate (many optimal initial
            // flows). Tie-break deterministically: pin theta and the flow value
            // and maximize the total adaptive throughput across scenarios,
            // which favors balanced flows over lopsided ones.
            const Rat theta_opt = outcome_opt->values[map.var_theta()];
            LinearProgram refine = lp;
            refine.objective.assign(refine.objective.size(), Rat(0));
            for (std::size_t i = 0; i < map.scenario_count(); ++i) {
                refine.objective[map.var_scenario(i, net.dummy_arc_id())] = 1;
            }
            refine.rows.push_back(
                {{{map.var_theta(), Rat(1)}}, Relation::Eq, theta_opt});
            if (options.mode == ObjectiveMode::Combined) {
                refine.rows.push_back(
                    {{{map.var_phi(net.dummy_arc_id()), Rat(1)}}, Relation::Eq, base.value});
            }
            LPOutcome refined = solve_lp(refine);
            if (refined.status == LPStatus::Optimal) {
                refined.objective = theta_opt;  // report the primary objective
                outcome_opt = std::move(refined);
            }
        }
    }
    const LPOutcome& outcome = *outcome_opt;
    if (outcome.status != LPStatus::Optimal) {
        // The model is always feasible (all-zero) and bounded, so this can
        // only be an internal defect.
        throw std::logic_error("scenario LP did not solve to optimality");
    }

    sol.flow = Flow(static_cast<std::size_t>(m) + 1);
    for (int a = 1; a <= net.dummy_arc_id(); ++a) {
        sol.flow.at(a) = outcome.values[map.var_phi(a)];
    }
    sol.theta = outcome.values[map.var_theta()];
    sol.loss = sol.fstar - sol.theta;

    check_feasible(net, sol.flow);
    if (sol.flow.value() != sol.fstar) {
        throw std::logic_error("optimal LP flow has value " + rat_to_string(sol.flow.value()) +
                               " but the maximum flow value is " + rat_to_string(sol.fstar));
    }

    if (options.certify) {
        PhaseTimer timer(timings ? &timings->certify_ms : nullptr);
        certify(net, sol, k, {options.attack_budget, options.attack_threads});
    }
    return sol;
}

}  // namespace kamrfp
