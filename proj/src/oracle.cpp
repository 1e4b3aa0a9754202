#include "kamrfp/oracle.hpp"

#include "kamrfp/maxflow.hpp"

#include <algorithm>
#include <thread>

namespace kamrfp {

namespace {

/// Lexicographic rank -> k-subset of 1..m (combinadic unranking).
std::vector<int> unrank_subset(int m, int k, unsigned long long rank) {
    std::vector<int> subset;
    subset.reserve(k);
    int next = 1;
    for (int slots = k; slots > 0; --slots) {
        for (int c = next;; ++c) {
            const unsigned long long below = ScenarioIndex::binomial(m - c, slots - 1);
            if (rank < below) {
                subset.push_back(c);
                next = c + 1;
                break;
            }
            rank -= below;
        }
    }
    return subset;
}

/// Advances an ascending k-subset of 1..m to its lexicographic successor.
bool next_subset(std::vector<int>& cur, int m) {
    const int k = static_cast<int>(cur.size());
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == m - (k - 1 - pos)) --pos;
    if (pos < 0) return false;
    ++cur[pos];
    for (int j = pos + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    return true;
}

struct ChunkBest {
    Rat residual;
    unsigned long long rank = 0;
    bool any = false;
};

ChunkBest scan_range(const Network& net, const Flow& phi, int m, int k,
                     unsigned long long lo, unsigned long long hi) {
    ChunkBest best;
    if (lo >= hi) return best;
    std::vector<int> cur = unrank_subset(m, k, lo);
    std::set<int> deleted;
    for (unsigned long long r = lo; r < hi; ++r) {
        deleted.clear();
        deleted.insert(cur.begin(), cur.end());
        MaxFlowOptions opt;
        opt.capacity_override = &phi.values;
        opt.deleted = &deleted;
        Rat value = max_flow(net, opt).value;
        if (!best.any || value < best.residual) {
            best.residual = std::move(value);
            best.rank = r;
            best.any = true;
        }
        if (r + 1 < hi) next_subset(cur, m);
    }
    return best;
}

}  // namespace

AttackReport worst_case(const Network& net, const Flow& phi, int k,
                        const OracleOptions& options) {
    const int m = net.arc_count();
    if (k < 1 || k > m) {
        throw std::invalid_argument("k out of range [1," + std::to_string(m) + "]");
    }
    check_feasible(net, phi);
    const unsigned long long total = ScenarioIndex::binomial(m, k);
    if (total > options.budget) throw BudgetExceeded(total, options.budget);

    const unsigned threads =
        std::max(1u, std::min<unsigned>(options.threads,
                                        static_cast<unsigned>(std::min<unsigned long long>(
                                            total, 256))));
    std::vector<ChunkBest> bests(threads);
    if (threads == 1) {
        bests[0] = scan_range(net, phi, m, k, 0, total);
    } else {
        std::vector<std::thread> pool;
        const unsigned long long chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const unsigned long long lo = t * chunk;
            const unsigned long long hi = std::min(total, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { bests[t] = scan_range(net, phi, m, k, lo, hi); });
        }
        for (auto& th : pool) th.join();
    }

    // Deterministic reduce: minimum residual, then lowest rank (subsets were
    // enumerated in lexicographic order).
    ChunkBest best;
    for (const auto& b : bests) {
        if (!b.any) continue;
        if (!best.any || b.residual < best.residual ||
            (b.residual == best.residual && b.rank < best.rank)) {
            best = b;
        }
    }

    AttackReport report;
    report.attacked_flow_value = phi.value();
    report.residual = best.residual;
    report.loss = report.attacked_flow_value - report.residual;
    report.worst_attack = unrank_subset(m, k, best.rank);
    report.subsets_evaluated = total;
    return report;
}

bool certify(const Network& net, Solution& sol, int k, const OracleOptions& options) {
    AttackReport report;
    try {
        report = worst_case(net, sol.flow, k, options);
    } catch (const BudgetExceeded&) {
        sol.certified = false;
        sol.worst_attack.clear();
        return false;
    }
    sol.certified = (report.residual == sol.theta);
    sol.worst_attack = sol.flow.value() == 0 ? std::vector<int>{} : report.worst_attack;
    return sol.certified;
}

Rat k1_bisection_oracle(const Network& net, const Rat& tolerance) {
    if (tolerance <= 0) throw std::invalid_argument("tolerance must be positive");
    const Rat fstar = max_flow(net).value;
    if (fstar <= 0) throw std::invalid_argument("bisection oracle requires a positive max flow");

    const int m = net.arc_count();
    auto reaches_fstar = [&](const Rat& lambda) {
        std::vector<Rat> caps(static_cast<std::size_t>(m) + 1);
        for (int a = 1; a <= m; ++a) caps[a - 1] = std::min(*net.arc(a).capacity, lambda);
        MaxFlowOptions opt;
        opt.capacity_override = &caps;
        return max_flow(net, opt).value == fstar;
    };

    // Invariant: capping at hi keeps value F*, capping at lo does not.
    Rat lo = 0, hi = fstar;
    while (hi - lo > tolerance) {
        Rat mid = (lo + hi) / 2;
        if (reaches_fstar(mid)) hi = std::move(mid);
        else lo = std::move(mid);
    }
    return hi;
}

}  // namespace kamrfp
