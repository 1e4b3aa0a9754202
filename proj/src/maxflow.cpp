#include "kamrfp/maxflow.hpp"

#include <algorithm>
#include <deque>

namespace kamrfp {

namespace {

struct Residual {
    // Per vertex: incident (arc_id, forward?) pairs in scan order.
    std::vector<std::vector<std::pair<int, bool>>> adj;
    std::vector<Rat> cap;   // effective capacity, arc id - 1
    std::vector<Rat> flow;  // current flow, arc id - 1
    std::vector<bool> dead;

    Rat headroom(int arc, bool forward) const {
        return forward ? cap[arc - 1] - flow[arc - 1] : Rat(flow[arc - 1]);
    }
};

Residual build_residual(const Network& net, const MaxFlowOptions& opt) {
    const int m = net.arc_count();
    Residual r;
    r.adj.assign(static_cast<std::size_t>(net.vertex_count()) + 1, {});
    r.cap.resize(m);
    r.flow.assign(m, Rat(0));
    r.dead.assign(m, false);
    if (opt.deleted) {
        for (int a : *opt.deleted) {
            if (a < 1 || a > m) {
                throw ValidationError("deleted arc id " + std::to_string(a) +
                                      " out of range (dummy arc is not deletable)");
            }
            r.dead[a - 1] = true;
        }
    }
    for (int a = 1; a <= m; ++a) {
        r.cap[a - 1] = opt.capacity_override ? (*opt.capacity_override)[a - 1]
                                             : *net.arc(a).capacity;
        if (r.cap[a - 1] < 0) throw ValidationError("negative effective capacity");
    }
    const std::vector<int>* order = opt.arc_order;
    for (int i = 0; i < m; ++i) {
        const int a = order ? (*order)[i] : i + 1;
        if (r.dead[a - 1]) continue;
        const Arc& arc = net.arc(a);
        r.adj[arc.tail].push_back({a, true});
        r.adj[arc.head].push_back({a, false});
    }
    return r;
}

}  // namespace

MaxFlowResult max_flow(const Network& net, const MaxFlowOptions& opt) {
    const int n = net.vertex_count();
    const int m = net.arc_count();
    Residual r = build_residual(net, opt);

    Rat total = 0;
    std::vector<std::pair<int, bool>> parent(static_cast<std::size_t>(n) + 1);
    std::vector<bool> visited(static_cast<std::size_t>(n) + 1);
    for (;;) {
        // BFS for a shortest augmenting path; the fixed scan order makes the
        // found path the lowest-arc-id one among shortest paths.
        std::fill(visited.begin(), visited.end(), false);
        std::deque<int> queue{net.source()};
        visited[net.source()] = true;
        bool reached = false;
        while (!queue.empty() && !reached) {
            const int v = queue.front();
            queue.pop_front();
            for (const auto& [a, fwd] : r.adj[v]) {
                const int w = fwd ? net.arc(a).head : net.arc(a).tail;
                if (visited[w] || r.headroom(a, fwd) == 0) continue;
                visited[w] = true;
                parent[w] = {a, fwd};
                if (w == net.sink()) {
                    reached = true;
                    break;
                }
                queue.push_back(w);
            }
        }
        if (!reached) break;

        Rat bottleneck;
        bool first = true;
        for (int v = net.sink(); v != net.source();) {
            const auto& [a, fwd] = parent[v];
            Rat h = r.headroom(a, fwd);
            if (first || h < bottleneck) bottleneck = h;
            first = false;
            v = fwd ? net.arc(a).tail : net.arc(a).head;
        }
        for (int v = net.sink(); v != net.source();) {
            const auto& [a, fwd] = parent[v];
            if (fwd) {
                r.flow[a - 1] += bottleneck;
                v = net.arc(a).tail;
            } else {
                r.flow[a - 1] -= bottleneck;
                v = net.arc(a).head;
            }
        }
        total += bottleneck;
    }

    MaxFlowResult result{Flow(static_cast<std::size_t>(m) + 1), total, {}};
    for (int a = 1; a <= m; ++a) result.flow.at(a) = r.flow[a - 1];
    result.flow.values.back() = total;

    // Source side of the final residual graph gives a minimum cut.
    std::fill(visited.begin(), visited.end(), false);
    std::deque<int> queue{net.source()};
    visited[net.source()] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (const auto& [a, fwd] : r.adj[v]) {
            const int w = fwd ? net.arc(a).head : net.arc(a).tail;
            if (visited[w] || r.headroom(a, fwd) == 0) continue;
            visited[w] = true;
            queue.push_back(w);
        }
    }
    for (int a = 1; a <= m; ++a) {
        if (r.dead[a - 1]) continue;
        const Arc& arc = net.arc(a);
        if (visited[arc.tail] && !visited[arc.head]) result.min_cut.push_back(a);
    }
    return result;
}

Rat residual_value(const Network& net, const Flow& phi, const std::set<int>& deleted) {
    check_feasible(net, phi);
    MaxFlowOptions opt;
    opt.capacity_override = &phi.values;
    opt.deleted = &deleted;
    return max_flow(net, opt).value;
}

int min_cut_cardinality(const Network& net) {
    std::vector<Rat> unit(static_cast<std::size_t>(net.arc_count()) + 1, Rat(1));
    MaxFlowOptions opt;
    opt.capacity_override = &unit;
    const Rat value = max_flow(net, opt).value;
    return numerator(value).convert_to<int>();
}

}  // namespace kamrfp
