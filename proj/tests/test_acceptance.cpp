#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "kamrfp/model.hpp"
#include "kamrfp/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <numeric>
#include <random>

using namespace kamrfp;

namespace {

// Prints exactly one PASS/FAIL line per criterion when the case finishes.
class Criterion {
public:
    Criterion(int id, std::string what) : id_(id), what_(std::move(what)) {}
    ~Criterion() {
        const bool ok = ok_ && std::uncaught_exceptions() == 0;
        std::printf("[criterion %d] %s: %s\n", id_, what_.c_str(), ok ? "PASS" : "FAIL");
        std::fflush(stdout);
    }
    void expect(bool cond) {
        ok_ &= cond;
        CHECK(cond);
    }

private:
    int id_;
    std::string what_;
    bool ok_ = true;
};

double seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct SuiteEntry {
    Network net;
    int k;
    Solution two_phase;
    Solution combined;
};

// 200 random instances shared by criteria 4 through 7, solved once in both
// objective modes with full certification.
const std::vector<SuiteEntry>& suite() {
    static const std::vector<SuiteEntry> entries = [] {
        std::vector<SuiteEntry> out;
        out.reserve(200);
        std::mt19937 rng(20260823);
        std::uniform_int_distribution<int> kd(1, 3);
        while (out.size() < 200) {
            Network net = testutil::random_network(rng, 8, 14, 10);
            const int k = std::min(kd(rng), net.arc_count());
            if (ScenarioIndex::binomial(net.arc_count(), k) > 400) continue;
            SolveOptions two_phase;
            SolveOptions combined;
            combined.mode = ObjectiveMode::Combined;
            Solution a = solve_kamrfp(net, k, two_phase);
            Solution b = solve_kamrfp(net, k, combined);
            out.push_back({std::move(net), k, std::move(a), std::move(b)});
        }
        return out;
    }();
    return entries;
}

}  // namespace

TEST_CASE("criterion 1") {
    Criterion c(1, "b=4 fixture, k=1: F*=4, theta=2, balanced split, certified, <1s");

    const auto start = std::chrono::steady_clock::now();
    const Solution sol = solve_kamrfp(testutil::fan_instance(4), 1);
    const double elapsed = seconds(start);

    c.expect(sol.fstar == 4);
    c.expect(sol.theta == 2);
    c.expect(sol.loss == 2);
    c.expect(sol.flow.at(5) == 2);
    c.expect(sol.flow.at(6) == 2);
    c.expect(sol.certified);
    c.expect(elapsed < 1.0);

    for (int b : {6, 8, 10}) {
        const Solution s = solve_kamrfp(testutil::fan_instance(b), 1);
        c.expect(s.theta == Rat(b, 2));
        c.expect(s.certified);
    }
}

TEST_CASE("criterion 2") {
    Criterion c(2, "b=4 fixture, k=2: theta=0, loss=4, worst attack is the (v,t) pair");

    const Solution sol = solve_kamrfp(testutil::fan_instance(4), 2);
    c.expect(sol.theta == 0);
    c.expect(sol.loss == 4);
    c.expect(sol.worst_attack == std::vector<int>{5, 6});
    c.expect(sol.certified);
}

TEST_CASE("criterion 3") {
    Criterion c(3, "variable count equals (m+1) + 1 + C(m,k)(m+1-k) on every fixture");

    auto check_counts = [&](const Network& net, int k) {
        auto [lp, map] = build_model(net, k, ObjectiveMode::Combined, std::nullopt);
        const auto m = static_cast<unsigned long long>(net.arc_count());
        const auto expected = (m + 1) + 1 + ScenarioIndex::binomial(net.arc_count(), k) * (m + 1 - k);
        c.expect(map.total_variables() == expected);
        c.expect(static_cast<unsigned long long>(lp.num_vars) == expected);
    };

    for (int b : {4, 6, 8, 10}) {
        for (int k : {1, 2}) check_counts(testutil::fan_instance(b), k);
    }
    check_counts(testutil::load_fixture("single_arc.dimacs"), 1);
    for (int k : {1, 2, 3}) check_counts(testutil::load_fixture("dense_m16.dimacs"), k);

    // The b=4, k=1 expansion from the worked example: 7 + 1 + 6*6 = 44.
    auto [lp, map] = build_model(testutil::fan_instance(4), 1, ObjectiveMode::TwoPhase, Rat(4));
    c.expect(map.total_variables() == 44);
}

TEST_CASE("criterion 4") {
    Criterion c(4, "200 random instances: exhaustive worst-case residual equals theta exactly");

    for (const SuiteEntry& entry : suite()) {
        const AttackReport report = worst_case(entry.net, entry.two_phase.flow, entry.k);
        c.expect(report.residual == entry.two_phase.theta);
        c.expect(entry.two_phase.certified);
    }
}

TEST_CASE("criterion 5") {
    Criterion c(5, "k=1 bisection oracle matches the LP loss within 1e-6 on the random suite");

    const Rat tol(1, 1000000);
    for (const SuiteEntry& entry : suite()) {
        SolveOptions quick;
        quick.certify = false;
        const Solution sol = solve_kamrfp(entry.net, 1, quick);
        if (sol.fstar == 0) continue;  // no flow, no single-arc bottleneck to probe
        const Rat lambda = k1_bisection_oracle(entry.net, tol);
        c.expect(abs((sol.fstar - sol.theta) - lambda) <= tol);
    }
}

TEST_CASE("criterion 6") {
    Criterion c(6, "two-phase and combined modes agree on theta; combined reaches F*");

    for (const SuiteEntry& entry : suite()) {
        c.expect(entry.two_phase.theta == entry.combined.theta);
        c.expect(entry.combined.flow.value() == entry.combined.fstar);
        c.expect(entry.two_phase.fstar == entry.combined.fstar);
    }
}

TEST_CASE("criterion 7") {
    Criterion c(7, "monotonicity, cut collapse, residual bounds, dominance over 20 alt flows");

    std::mt19937 rng(7);
    for (const SuiteEntry& entry : suite()) {
        const Network& net = entry.net;
        const int m = net.arc_count();
        const int k = entry.k;
        const Solution& sol = entry.two_phase;

        // theta(k+1) <= theta(k), where the next level still fits the suite caps.
        if (k + 1 <= m && ScenarioIndex::binomial(m, k + 1) <= 400) {
            SolveOptions quick;
            quick.certify = false;
            const Solution next = solve_kamrfp(net, k + 1, quick);
            c.expect(next.theta <= sol.theta);
        }

        // A min cut of at most k arcs means the adversary can sever everything.
        if (min_cut_cardinality(net) <= k) c.expect(sol.theta == 0);

        // Residual bounds and dominance over randomized alternative max flows.
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 1);
        for (int alt = 0; alt < 20; ++alt) {
            std::shuffle(order.begin(), order.end(), rng);
            MaxFlowOptions opts;
            opts.arc_order = &order;
            const MaxFlowResult r = max_flow(net, opts);
            const AttackReport report = worst_case(net, r.flow, k);
            c.expect(report.residual <= sol.theta);
            c.expect(report.residual <= r.value);
            Rat deleted_mass(0);
            for (int a : report.worst_attack) deleted_mass += r.flow.at(a);
            c.expect(r.value - deleted_mass <= report.residual);
        }
    }
}

TEST_CASE("criterion 8") {
    Criterion c(8, "m=16, k=3 solves and certifies under 60s; variable cap rejects larger builds");

    const Network net = testutil::load_fixture("dense_m16.dimacs");
    const auto start = std::chrono::steady_clock::now();
    const Solution sol = solve_kamrfp(net, 3);
    const double elapsed = seconds(start);
    c.expect(elapsed < 60.0);
    c.expect(sol.certified);
    c.expect(sol.fstar == max_flow(net).value);

    const AttackReport report = worst_case(net, sol.flow, 3);
    c.expect(report.residual == sol.theta);

    // 25 parallel arcs at k=3 need C(25,3)*23 = 52900 scenario variables,
    // just over the default cap of 50000.
    std::vector<Arc> arcs;
    for (int i = 0; i < 25; ++i) arcs.push_back({1, 2, Rat(1)});
    const Network wide(2, std::move(arcs), 1, 2);
    bool rejected = false;
    try {
        solve_kamrfp(wide, 3);
    } catch (const ModelTooLarge& e) {
        rejected = true;
        const std::string what = e.what();
        c.expect(what.find("O(m^(k+1))") != std::string::npos);
        c.expect(what.find("--max-vars") != std::string::npos);
    }
    c.expect(rejected);
}
