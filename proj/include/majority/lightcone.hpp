#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/graph.hpp"

namespace majority {

// Small fixed-width bitset for cone bookkeeping (one bit per vertex).
class VertexSet {
  public:
    explicit VertexSet(int n = 0) : n_(n), w_((n + 63) / 64, 0) {}

    void insert(int v) { w_[v >> 6] |= 1ull << (v & 63); }
    bool contains(int v) const { return (w_[v >> 6] >> (v & 63)) & 1; }

    void unite(const VertexSet& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    }

    bool intersects(const VertexSet& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (contains(v)) out.push_back(v);
        return out;
    }

    int size() const { return n_; }

  private:
    int n_;
    std::vector<std::uint64_t> w_;
};

// Synchronous cone: after t rounds an opinion can have drawn on exactly the
// ball of radius t.
inline VertexSet light_cone_sync(const Graph& g, int i, int t) {
    if (t < 0) fail(errc::invalid_params, "time must be >= 0");
    VertexSet cone(g.n);
    for (int v : g.ball(i, t)) cone.insert(v);
    return cone;
}

// Asynchronous cones replay the schedule: a ring at vertex v rebuilds v's
// cone as the union over its neighbors' cones (v's own old cone enters only
// through a self-loop, matching what the update actually reads).
inline std::vector<VertexSet> light_cones_async(const Graph& g, double t,
                                                const AsyncSchedule& sched) {
    std::vector<VertexSet> cone(g.n, VertexSet(g.n));
    for (int v = 0; v < g.n; ++v) cone[v].insert(v);
    for (auto& [when, v] : sched.events) {
        if (when > t) break;
        VertexSet next(g.n);
        for (int j : g.adj[v]) next.unite(cone[j]);
        cone[v] = std::move(next);
    }
    return cone;
}

inline VertexSet light_cone_async(const Graph& g, int i, double t, const AsyncSchedule& sched) {
    return light_cones_async(g, t, sched)[i];
}

inline bool causally_connected(const VertexSet& a, const VertexSet& b) {
    return a.intersects(b);
}

// Exact radius for the synchronous model: cones of i and j at time t are
// balls of radius t, so they meet only if the distance is <= 2t.
inline int causal_radius_sync(int t) {
    if (t < 0) fail(errc::invalid_params, "time must be >= 0");
    return 2 * t;
}

// Monte Carlo radius for the async model: the smallest r such that a cone
// grown for time t reaches past distance r/2 with empirical probability at
// most delta/2 (two such cones meeting forces one to cross half the gap).
// Maximized over the given representatives; insufficient_trials fires when
// the estimate at the chosen r cannot be resolved against delta/2.
inline int causal_radius_async(const Graph& g, double t, double delta, int trials,
                               std::uint64_t seed, const std::vector<int>& representatives = {0}) {
    if (delta <= 0.0 || delta >= 1.0) fail(errc::invalid_params, "delta must be in (0,1)");
    if (trials < 1) fail(errc::invalid_params, "need trials >= 1");

    int max_reach = 0;
    for (int i : representatives) max_reach = std::max(max_reach, g.eccentricity(i));
    // tail_count[i][x] = how many trials had cone(i) reach distance > x
    std::vector<std::vector<std::int64_t>> tail(representatives.size(),
                                                std::vector<std::int64_t>(max_reach + 2, 0));

    for (int trial = 0; trial < trials; ++trial) {
        auto sched = sample_async_schedule(g, t, derive_seed(seed, 0xc0de, trial));
        auto cones = light_cones_async(g, t, sched);
        for (std::size_t k = 0; k < representatives.size(); ++k) {
            int i = representatives[k];
            auto dist = g.distances(i);
            int reach = 0;
            for (int v : cones[i].members()) reach = std::max(reach, dist[v]);
            for (int x = 0; x < reach && x <= max_reach; ++x) ++tail[k][x];
        }
    }

    int r = 0;
    for (std::size_t k = 0; k < representatives.size(); ++k) {
        int rk = -1;
        for (int cand = 0; cand <= 2 * (max_reach + 1); ++cand) {
            int threshold = cand / 2;  // reach > cand/2 means reach >= threshold+1
            double phat = (threshold <= max_reach) ? double(tail[k][threshold]) / trials : 0.0;
            if (phat <= delta / 2.0) {
                rk = cand;
                double sigma = std::sqrt(std::max(phat * (1.0 - phat), 1.0 / trials) / trials);
                if (phat + 3.0 * sigma >= delta / 2.0)
                    fail(errc::insufficient_trials,
                         "cone-reach estimate too noisy to resolve against delta/2");
                break;
            }
        }
        r = std::max(r, rk);
    }
    return r;
}

// Reproduce A^i_T by simulating only the ball B(i, T+1), shrinking the
// updated set by one layer per round. Exactness is a theorem, not an
// approximation: round s only needs opinions within distance T-s+1, which
// the previous round computed correctly.
inline std::int8_t sync_opinion_truncated(const Graph& g, const OpinionConfig& c0, int i, int T) {
    check_config(g, c0);
    auto dist = g.distances(i);
    OpinionConfig cur = c0;
    OpinionConfig next = cur;
    for (int s = 1; s <= T; ++s) {
        int radius = T - s;
        for (int v = 0; v < g.n; ++v) {
            if (dist[v] > radius) continue;
            std::int64_t sum = 0;
            for (int j : g.adj[v]) sum += cur[j];
            next[v] = sign_of(sum);
        }
        std::swap(cur, next);
        next = cur;
    }
    return cur[i];
}

}  // namespace majority
