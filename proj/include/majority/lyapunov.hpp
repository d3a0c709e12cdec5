#pragma once

#include <cstdint>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/graph.hpp"
#include "majority/weighting.hpp"

namespace majority {

// Energy coupling two consecutive configurations:
//
//   L = 1/4 [ sum over ordered adjacent pairs (i,j), i != j, of
//             z(i,j) (c_next[i] - c_now[j])^2
//           + sum over loops i of z(i,i) (c_next[i] - c_now[i])^2 ]
//
// Both orientations of a non-loop edge appear, loops once; that is the one
// bookkeeping under which the index-exchange step of the drop identity is
// exact, loops included. Accumulation runs per undirected edge in the
// graph's canonical edge order, so two calls whose per-edge contributions
// agree produce bit-identical sums.
template <class S>
S lyapunov_L(const Graph& g, const EdgeWeighting<S>& w, const OpinionConfig& c_next,
             const OpinionConfig& c_now) {
    check_config(g, c_next);
    check_config(g, c_now);
    S total = S(0);
    for (auto& [u, v] : g.edges) {
        int d1, d2;
        if (u == v) {
            d1 = c_next[u] - c_now[u];
            d2 = 0;
        } else {
            d1 = c_next[u] - c_now[v];
            d2 = c_next[v] - c_now[u];
        }
        int sq = d1 * d1 + d2 * d2;
        if (sq != 0) total += w.weight(u, v) * S(sq);
    }
    return total / S(4);
}

// Per-vertex drop J^i = 1/2 (c_next[i] - c_prev[i]) * sum_j z(i,j) c_now[j];
// nonnegative, zero exactly when the bracketing opinions agree, and
// sum_i J^i equals L(c_next, c_now) - L(c_now, c_prev) with flipped sign.
template <class S>
struct DropReport {
    std::vector<S> per_vertex;
    S total = S(0);
};

template <class S>
DropReport<S> drop_J(const Graph& g, const EdgeWeighting<S>& w, const OpinionConfig& c_prev,
                     const OpinionConfig& c_now, const OpinionConfig& c_next) {
    check_config(g, c_prev);
    check_config(g, c_now);
    check_config(g, c_next);
    DropReport<S> out;
    out.per_vertex.assign(g.n, S(0));
    for (int i = 0; i < g.n; ++i) {
        int swing = c_next[i] - c_prev[i];  // in {-2, 0, 2}
        if (swing == 0) continue;
        S sum = S(0);
        for (int j : g.adj[i]) sum += w.weight(i, j) * S(int(c_now[j]));
        out.per_vertex[i] = S(swing / 2) * sum;
        out.total += out.per_vertex[i];
    }
    return out;
}

// --------------------------------------------------------------------------
// Instrumented runs: L and J recorded at every step, with the residual
// |(L_t - L_{t-dt}) + J_t| computed from independently evaluated sums (never
// from the identity itself). In the async model L_{t-dt} couples the
// post-event config against the pre-event one, per the infinitesimal
// bookkeeping; the reported chain ... >= L_pre[m] >= L[m] >= L_pre[m+1] ...
// is non-increasing, which `monotone` certifies.

template <class S>
struct EnergyReport {
    std::vector<double> times;    // round index (sync) or event time (async)
    std::vector<S> L;             // L_t after each step; L[0] at time 0
    std::vector<S> L_pre;         // async only: L_{t-dt} per event
    std::vector<S> J;             // total drop per step, aligned with times
    std::vector<S> residual;      // |(L_t - L_{t-dt}) + J_t| per step
    bool monotone = true;
    S max_residual = S(0);
};

template <class S>
EnergyReport<S> energy_report_sync(const Graph& g, const EdgeWeighting<S>& w,
                                   const SyncRun& run) {
    EnergyReport<S> rep;
    int steps = int(run.configs.size()) - 2;  // J_t needs t-1 and t+1
    rep.times.push_back(0.0);
    rep.L.push_back(lyapunov_L(g, w, run.configs[1], run.configs[0]));
    for (int t = 1; t <= steps; ++t) {
        S L_t = lyapunov_L(g, w, run.configs[t + 1], run.configs[t]);
        S J_t = drop_J(g, w, run.configs[t - 1], run.configs[t], run.configs[t + 1]).total;
        S res = scalar_ops<S>::abs(L_t - rep.L.back() + J_t);
        if (L_t > rep.L.back()) rep.monotone = false;
        rep.times.push_back(double(t));
        rep.L.push_back(L_t);
        rep.J.push_back(J_t);
        rep.residual.push_back(res);
        if (res > rep.max_residual) rep.max_residual = res;
    }
    return rep;
}

template <class S>
EnergyReport<S> energy_report_async(const Graph& g, const EdgeWeighting<S>& w,
                                    const AsyncRun& run) {
    EnergyReport<S> rep;
    OpinionConfig c = run.initial;
    rep.times.push_back(0.0);
    rep.L.push_back(lyapunov_L(g, w, c, c));
    for (auto& ev : run.events) {
        OpinionConfig pre = c;
        c[ev.v] = ev.after;
        S L_pre = lyapunov_L(g, w, c, pre);  // post against pre
        S L_post = lyapunov_L(g, w, c, c);
        S J = drop_J(g, w, pre, c, c).total;
        S res = scalar_ops<S>::abs(L_post - L_pre + J);
        if (L_pre > rep.L.back() || L_post > L_pre) rep.monotone = false;
        rep.times.push_back(ev.t);
        rep.L_pre.push_back(L_pre);
        rep.L.push_back(L_post);
        rep.J.push_back(J);
        rep.residual.push_back(res);
        if (res > rep.max_residual) rep.max_residual = res;
    }
    return rep;
}

// --------------------------------------------------------------------------
// Dynamic-monopoly accounting with the constant weighting z = 1, everything
// in exact integers: the initial disagreement energy of a seed set W bounds
// the total number of double-flip events any run can ever produce, so small
// W can never conquer a large graph for long.

struct MonopolyReport {
    std::int64_t budget = 0;        // 2 x (edges cut by the seed set)
    std::int64_t flip_events = 0;   // (vertex, round) pairs with A_{t+1} != A_{t-1}
    std::int64_t drop_total = 0;    // sum of integer J_t, equals L_0 - L_end
    bool within_budget = true;
    bool identity_exact = true;     // integer L_t - L_{t-1} == -J_t at every step
    int t_cycle = 0;
};

// Integer L with z = 1: quarter of the sum of squared differences, which is
// 1 per disagreeing ordered pair (each contributes 4).
inline std::int64_t lyapunov_L_int(const Graph& g, const OpinionConfig& c_next,
                                   const OpinionConfig& c_now) {
    std::int64_t quarters = 0;
    for (auto& [u, v] : g.edges) {
        if (u == v) {
            quarters += (c_next[u] != c_now[u]) ? 4 : 0;
        } else {
            quarters += (c_next[u] != c_now[v]) ? 4 : 0;
            quarters += (c_next[v] != c_now[u]) ? 4 : 0;
        }
    }
    return quarters / 4;
}

inline MonopolyReport monopoly_flip_budget(const Graph& g, const std::vector<int>& seeds,
                                           int t_max = 1 << 20) {
    OpinionConfig c0(g.n, -1);
    for (int s : seeds) {
        if (s < 0 || s >= g.n) fail(errc::invalid_params, "seed vertex out of range", s);
        c0[s] = 1;
    }
    MonopolyReport rep;
    rep.budget = lyapunov_L_int(g, c0, c0);

    auto run = run_sync_until_cycle(g, c0, t_max);
    rep.t_cycle = run.t_cycle;
    std::int64_t L_prev = lyapunov_L_int(g, run.configs[1], run.configs[0]);
    for (int t = 1; t <= run.t_cycle; ++t) {
        std::int64_t L_t = lyapunov_L_int(g, run.configs[t + 1], run.configs[t]);
        std::int64_t J_t = 0;
        for (int i = 0; i < g.n; ++i) {
            if (run.configs[t + 1][i] == run.configs[t - 1][i]) continue;
            ++rep.flip_events;
            std::int64_t sum = 0;
            for (int j : g.adj[i]) sum += run.configs[t][j];
            J_t += (std::int64_t(run.configs[t + 1][i]) - run.configs[t - 1][i]) / 2 * sum;
        }
        if (L_t - L_prev != -J_t) rep.identity_exact = false;
        rep.drop_total += J_t;
        L_prev = L_t;
    }
    rep.within_budget = rep.flip_events <= rep.budget;
    return rep;
}

}  // namespace majority
