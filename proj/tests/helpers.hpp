#pragma once

#include "kamrfp/network.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline kamrfp::Network load_fixture(const std::string& name,
                                    kamrfp::NetworkFormat format = kamrfp::NetworkFormat::Dimacs) {
    std::ifstream in(fixture_path(name));
    REQUIRE(in.good());
    return kamrfp::parse_network(in, format);
}

/// Three-vertex fan family: b unit arcs (s,v) then two arcs (v,t)
/// of capacity b. Ids 1..b are the (s,v) arcs, b+1 and b+2 the (v,t) arcs.
inline kamrfp::Network fan_instance(int b) {
    std::vector<kamrfp::Arc> arcs;
    for (int i = 0; i < b; ++i) arcs.push_back({1, 2, kamrfp::Rat(1)});
    arcs.push_back({2, 3, kamrfp::Rat(b)});
    arcs.push_back({2, 3, kamrfp::Rat(b)});
    return kamrfp::Network(3, std::move(arcs), 1, 3);
}

/// Random connected-ish digraph with integer capacities <= cap_max.
/// Arc endpoints are sampled uniformly (no self-loops, parallels allowed).
inline kamrfp::Network random_network(std::mt19937& rng, int max_n = 8, int max_m = 14,
                                      int cap_max = 10) {
    std::uniform_int_distribution<int> nd(2, max_n);
    const int n = nd(rng);
    std::uniform_int_distribution<int> md(1, max_m);
    const int m = md(rng);
    std::uniform_int_distribution<int> vd(1, n);
    std::uniform_int_distribution<int> cd(0, cap_max);
    std::vector<kamrfp::Arc> arcs;
    for (int i = 0; i < m; ++i) {
        int tail = vd(rng), head = vd(rng);
        while (head == tail) head = vd(rng);
        arcs.push_back({tail, head, kamrfp::Rat(cd(rng))});
    }
    const int s = 1;
    const int t = n;
    return kamrfp::Network(n, std::move(arcs), s, t);
}

}  // namespace testutil
