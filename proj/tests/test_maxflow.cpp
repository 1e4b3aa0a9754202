#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "kamrfp/maxflow.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace kamrfp;

namespace {

Rat cut_capacity(const Network& net, const std::vector<int>& cut,
                 const std::vector<Rat>* override_caps) {
    Rat sum = 0;
    for (int a : cut) {
        sum += override_caps ? (*override_caps)[a - 1] : *net.arc(a).capacity;
    }
    return sum;
}

}  // namespace

TEST_CASE("single arc") {
    const Network net = testutil::load_fixture("single_arc.dimacs");
    const MaxFlowResult r = max_flow(net);
    CHECK(r.value == 5);
    CHECK(r.flow.at(1) == 5);
    CHECK(r.flow.value() == 5);
    CHECK(r.min_cut == std::vector<int>{1});
    check_feasible(net, r.flow);
}

TEST_CASE("fan instance b=4") {
    const Network net = testutil::fan_instance(4);

    SUBCASE("baseline value and cut") {
        const MaxFlowResult r = max_flow(net);
        CHECK(r.value == 4);
        CHECK(r.min_cut == std::vector<int>{1, 2, 3, 4});  // the four unit arcs
        check_feasible(net, r.flow);
    }
    SUBCASE("deleting both (v,t) arcs disconnects the sink") {
        const std::set<int> deleted{5, 6};
        MaxFlowOptions opt;
        opt.deleted = &deleted;
        CHECK(max_flow(net, opt).value == 0);
    }
}

TEST_CASE("residual value of the optimal split on b=4") {
    const Network net = testutil::fan_instance(4);
    Flow phi(7);
    phi.values = {Rat(1), Rat(1), Rat(1), Rat(1), Rat(2), Rat(2), Rat(4)};

    CHECK(residual_value(net, phi, {5}) == 2);  // lose one (v,t) arc
    CHECK(residual_value(net, phi, {6}) == 2);
    CHECK(residual_value(net, phi, {1}) == 3);  // lose one unit (s,v) arc
    CHECK(residual_value(net, phi, {}) == 4);   // no deletion: phi_ts itself

    SUBCASE("infeasible flow rejected") {
        phi.values[0] = 5;  // above capacity 1
        CHECK_THROWS_AS(residual_value(net, phi, {}), ValidationError);
    }
    SUBCASE("dummy arc is not deletable") {
        phi.values[0] = 1;
        CHECK_THROWS_AS(residual_value(net, phi, {7}), ValidationError);
    }
}

TEST_CASE("min cut cardinality") {
    CHECK(min_cut_cardinality(testutil::load_fixture("single_arc.dimacs")) == 1);
    CHECK(min_cut_cardinality(testutil::fan_instance(4)) == 2);

    // Two vertex-disjoint 2-arc paths.
    const Network two_paths = parse_network(
        "p max 4 4\nn 1 s\nn 4 t\na 1 2 3\na 2 4 3\na 1 3 5\na 3 4 5\n",
        NetworkFormat::Dimacs);
    CHECK(min_cut_cardinality(two_paths) == 2);

    // Disconnected network.
    const Network island = parse_network("p max 3 1\nn 1 s\nn 3 t\na 1 2 9\n",
                                         NetworkFormat::Dimacs);
    CHECK(min_cut_cardinality(island) == 0);
    CHECK(max_flow(island).value == 0);
}

TEST_CASE("max-flow equals min-cut exactly on random instances") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 120; ++trial) {
        const Network net = testutil::random_network(rng);
        const MaxFlowResult r = max_flow(net);
        check_feasible(net, r.flow);
        CHECK(r.value == cut_capacity(net, r.min_cut, nullptr));
        CHECK(r.value == r.flow.value());
    }
}

TEST_CASE("determinism: identical inputs give identical flows") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const Network net = testutil::random_network(rng);
        const MaxFlowResult a = max_flow(net);
        const MaxFlowResult b = max_flow(net);
        CHECK(a.flow == b.flow);
        CHECK(a.min_cut == b.min_cut);
    }
}

TEST_CASE("alternative arc orders change the flow, never the value") {
    const Network net = testutil::fan_instance(4);
    const Rat value = max_flow(net).value;
    std::vector<int> order(6);
    std::iota(order.begin(), order.end(), 1);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        MaxFlowOptions opt;
        opt.arc_order = &order;
        const MaxFlowResult r = max_flow(net, opt);
        CHECK(r.value == value);
        check_feasible(net, r.flow);
    }
}

TEST_CASE("residual monotonicity and bounds on random flows") {
    std::mt19937 rng(47);
    int checked = 0;
    while (checked < 60) {
        const Network net = testutil::random_network(rng, 6, 8, 6);
        const MaxFlowResult base = max_flow(net);
        if (base.value == 0) continue;
        ++checked;
        const Flow& phi = base.flow;
        const int m = net.arc_count();

        std::uniform_int_distribution<int> ad(1, m);
        std::set<int> small{ad(rng)};
        std::set<int> big = small;
        big.insert(ad(rng));

        const Rat r_small = residual_value(net, phi, small);
        const Rat r_big = residual_value(net, phi, big);
        CHECK(r_big <= r_small);  // more damage cannot help

        for (const auto& deleted : {small, big}) {
            const Rat r = residual_value(net, phi, deleted);
            CHECK(r >= 0);
            CHECK(r <= phi.value());
            Rat removed = 0;
            for (int a : deleted) removed += phi.at(a);
            CHECK(r >= phi.value() - removed);  // path-decomposition lower bound
        }
    }
}

TEST_CASE("overridden capacities drive the min cut") {
    const Network net = testutil::fan_instance(4);
    std::vector<Rat> caps{Rat(1), Rat(1), Rat(1), Rat(1), Rat(1, 2), Rat(1, 2), Rat(0)};
    MaxFlowOptions opt;
    opt.capacity_override = &caps;
    const MaxFlowResult r = max_flow(net, opt);
    CHECK(r.value == 1);
    CHECK(r.min_cut == std::vector<int>{5, 6});
    CHECK(r.value == cut_capacity(net, r.min_cut, &caps));
}
