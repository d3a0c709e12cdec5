#pragma once

// Independent oracles for the test suite. Each routine re-derives a quantity
// the library computes, using a different algorithm or data structure, so a
// shared bug would have to be made twice. Only public headers are used.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "majority/majority.hpp"

namespace oracles {

// Exact reconstruction error of a sign estimator, by enumerating the hidden
// state and every correct/flipped signal pattern. vote(c0, limit) returns a
// signed vote sum; a tie costs half its weight (the fair tie-break coin).
// Feasible only for small graphs: 2^(n+1) synchronous runs.
template <class VoteFn>
double exact_delta(const majority::Graph& g, double p, VoteFn vote) {
    double err = 0.0;
    for (int s : {+1, -1}) {
        for (std::uint64_t mask = 0; mask < (1ull << g.n); ++mask) {
            double prob = 0.5;
            majority::OpinionConfig c0(g.n);
            for (int i = 0; i < g.n; ++i) {
                bool correct = (mask >> i) & 1;
                prob *= correct ? p : 1.0 - p;
                c0[i] = std::int8_t(correct ? s : -s);
            }
            auto run = majority::run_sync_until_cycle(g, c0);
            std::int64_t sum = vote(c0, majority::limit_opinions(run));
            if (sum == 0)
                err += 0.5 * prob;
            else if ((sum > 0 ? 1 : -1) != s)
                err += prob;
        }
    }
    return err;
}

inline std::int64_t vote_limit_all(const majority::OpinionConfig&,
                                   const majority::OpinionConfig& limit) {
    std::int64_t sum = 0;
    for (auto z : limit) sum += z;
    return sum;
}

// Bond percolation re-done with union-find instead of DFS. Shares only the
// published draw contract: edges visited in the graph's sorted edge order,
// loops skipped without spending a draw, one uniform per proper edge kept
// when it lands below q. Winner is the largest component, ties resolved
// toward the one containing the smallest vertex.
struct PercolationOracle {
    std::vector<int> component;  // base ids, ascending
    std::int64_t kept_edges = 0;
};

inline PercolationOracle percolate_uf(const majority::Graph& base, double q,
                                      std::uint64_t seed) {
    std::vector<int> parent(base.n);
    for (int v = 0; v < base.n; ++v) parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };

    PercolationOracle out;
    majority::Rng rng(seed);
    for (auto& [u, v] : base.edges) {
        if (u == v) continue;
        if (rng.uniform01() < q) {
            ++out.kept_edges;
            parent[find(u)] = find(v);
        }
    }

    std::vector<std::int64_t> size(base.n, 0);
    std::vector<int> smallest(base.n, base.n);
    for (int v = 0; v < base.n; ++v) {
        int r = find(v);
        ++size[r];
        smallest[r] = std::min(smallest[r], v);
    }
    int best = -1;
    for (int r = 0; r < base.n; ++r) {
        if (parent[r] != r) continue;
        if (best < 0 || size[r] > size[best] ||
            (size[r] == size[best] && smallest[r] < smallest[best]))
            best = r;
    }
    for (int v = 0; v < base.n; ++v)
        if (find(v) == best) out.component.push_back(v);
    return out;
}

// Replay an async schedule and report how far the cone of rep reaches, using
// plain integer sets for the cone bookkeeping. A ring at v rebuilds v's cone
// as the union over adj[v] (the vertex's own old cone enters only through a
// self-loop), mirroring what the opinion update actually reads.
inline int cone_reach(const majority::Graph& g, int rep, double t,
                      const majority::AsyncSchedule& sched) {
    std::vector<std::set<int>> cone(g.n);
    for (int v = 0; v < g.n; ++v) cone[v].insert(v);
    for (auto& [when, v] : sched.events) {
        if (when > t) break;
        std::set<int> next;
        for (int j : g.adj[v]) next.insert(cone[j].begin(), cone[j].end());
        cone[v] = std::move(next);
    }
    auto dist = g.distances(rep);
    int reach = 0;
    for (int v : cone[rep]) reach = std::max(reach, dist[v]);
    return reach;
}

// Monte Carlo causal radius from freshly sampled schedules: the smallest r
// with P(cone reaches past r/2) <= delta/2, estimated over the given trials.
inline int causal_radius_mc(const majority::Graph& g, int rep, double t, double delta,
                            int trials, std::uint64_t seed) {
    int ecc = g.eccentricity(rep);
    std::vector<std::int64_t> tail(ecc + 2, 0);  // tail[x] = #{trials: reach > x}
    for (int trial = 0; trial < trials; ++trial) {
        auto sched =
            majority::sample_async_schedule(g, t, majority::derive_seed(seed, 0xabcd, trial));
        int reach = cone_reach(g, rep, t, sched);
        for (int x = 0; x < reach; ++x) ++tail[x];
    }
    for (int cand = 0;; ++cand) {
        int threshold = cand / 2;
        double phat = threshold <= ecc ? double(tail[threshold]) / trials : 0.0;
        if (phat <= delta / 2.0) return cand;
    }
}

}  // namespace oracles
