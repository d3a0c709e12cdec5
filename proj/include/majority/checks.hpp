#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/generators.hpp"
#include "majority/graph.hpp"
#include "majority/growth.hpp"
#include "majority/lyapunov.hpp"
#include "majority/rational.hpp"
#include "majority/rng.hpp"
#include "majority/weighting.hpp"

namespace majority {

// Randomized property checks, shared between the CLI verify suites and the
// acceptance harness. Each routine runs a batch of trials and reports counts
// plus the first counterexample; callers decide what a failure costs.

struct CheckReport {
    std::string name;
    std::int64_t passed = 0;
    std::int64_t failed = 0;
    std::string first_failure;
    double stat = 0.0;  // routine-specific headline (e.g. worst residual)

    bool ok() const { return failed == 0; }
    void record(bool good, const std::string& detail) {
        if (good) {
            ++passed;
        } else {
            if (failed == 0) first_failure = detail;
            ++failed;
        }
    }
};

namespace detail {

inline OpinionConfig random_config(int n, Rng& rng) {
    OpinionConfig c(n);
    for (auto& x : c) x = rng.coin() ? std::int8_t(1) : std::int8_t(-1);
    return c;
}

inline bool unanimous(const OpinionConfig& c, const std::vector<int>& vs) {
    for (int v : vs)
        if (c[v] != c[vs[0]]) return false;
    return true;
}

// Ceilings for a whole run, summed from the per-vertex flip bounds. Every
// round before the cycle closes contains at least one double flip, which
// also turns the flip budget into a horizon bound.
struct RunBudget {
    std::int64_t sync_rounds = 0;
    std::int64_t async_flips = 0;
};

inline RunBudget run_budget(const Graph& g) {
    RunBudget b;
    double sync_total = 0.0, async_total = 0.0;
    for (int i = 0; i < g.n; ++i) {
        auto prof = growth_moment(g, i);
        sync_total += flip_bound_sync(prof).value;
        async_total += flip_bound_async(prof).value;
    }
    b.sync_rounds = std::int64_t(std::ceil(sync_total)) + 4;
    b.async_flips = std::int64_t(std::ceil(async_total));
    return b;
}

inline AsyncOptions async_caps(const Graph& g, std::int64_t flip_budget, bool record) {
    AsyncOptions opt;
    opt.flip_cap = flip_budget;
    // generous ring allowance between flips; exceeding it would mean the
    // scheduler starves a discontent vertex for astronomically long
    opt.event_cap = 50 * std::int64_t(g.n) * (flip_budget + 10) + 1000;
    opt.record_events = record;
    return opt;
}

}  // namespace detail

// Every synchronous run settles into a period <= 2 orbit, every asynchronous
// run freezes, both within the flip-budget horizons.
inline CheckReport check_period_convergence(std::int64_t trials, int n_max, int d_max,
                                            std::uint64_t seed) {
    CheckReport rep;
    rep.name = "period_convergence";
    for (std::int64_t k = 0; k < trials; ++k) {
        Rng rng(derive_seed(seed, 11, k));
        Graph g = random_odd_graph(n_max, d_max, rng);
        auto budget = detail::run_budget(g);
        OpinionConfig c0 = detail::random_config(g.n, rng);
        bool good = true;
        std::string why;
        try {
            auto run = run_sync_until_cycle(g, c0, int(budget.sync_rounds));
            if (run.period > 2) {
                good = false;
                why = "period " + std::to_string(run.period);
            }
            auto res = run_async(g, c0, derive_seed(seed, 12, k),
                                 detail::async_caps(g, budget.async_flips, false));
            if (!res.run.stable) {
                good = false;
                why = "async run ended unstable";
            }
        } catch (const Error& e) {
            good = false;
            why = e.what();
        }
        rep.record(good, "trial " + std::to_string(k) + " (n=" + std::to_string(g.n) +
                             "): " + why);
    }
    return rep;
}

// Per-vertex flip counts stay within a*d*M (sync double flips) and 2*a*d*M
// (async opinion changes), with M computed from each vertex's own profile.
inline CheckReport check_flip_bounds(const Graph& g, std::int64_t trials, std::uint64_t seed,
                                     const std::string& label) {
    CheckReport rep;
    rep.name = "flip_bounds(" + label + ")";
    std::vector<double> sync_bound(g.n), async_bound(g.n);
    std::int64_t flip_budget = 0;
    std::int64_t sync_horizon = 4;
    for (int i = 0; i < g.n; ++i) {
        auto prof = growth_moment(g, i);
        sync_bound[i] = flip_bound_sync(prof).value;
        async_bound[i] = flip_bound_async(prof).value;
        flip_budget += std::int64_t(std::ceil(async_bound[i]));
        sync_horizon += std::int64_t(std::ceil(sync_bound[i]));
    }
    for (std::int64_t k = 0; k < trials; ++k) {
        Rng rng(derive_seed(seed, 31, k));
        OpinionConfig c0 = detail::random_config(g.n, rng);
        bool good = true;
        std::string why;
        try {
            auto run = run_sync_until_cycle(g, c0, int(sync_horizon));
            for (int i = 0; i < g.n && good; ++i) {
                auto flips = count_flips(run, i);
                if (double(flips) > sync_bound[i]) {
                    good = false;
                    why = "sync vertex " + std::to_string(i) + ": " + std::to_string(flips) +
                          " > " + std::to_string(sync_bound[i]);
                }
                rep.stat = std::max(rep.stat, double(flips) / sync_bound[i]);
            }
            auto res = run_async(g, c0, derive_seed(seed, 32, k),
                                 detail::async_caps(g, flip_budget, true));
            for (int i = 0; i < g.n && good; ++i) {
                auto flips = count_flips(res.run, i);
                if (double(flips) > async_bound[i]) {
                    good = false;
                    why = "async vertex " + std::to_string(i) + ": " + std::to_string(flips) +
                          " > " + std::to_string(async_bound[i]);
                }
            }
        } catch (const Error& e) {
            good = false;
            why = e.what();
        }
        rep.record(good, "trial " + std::to_string(k) + ": " + why);
    }
    return rep;
}

// Forcing agreement on the ball B(center, r0+2) pins the center forever, no
// matter what the rest of the graph does, in both models.
inline CheckReport check_bunker(const Graph& g, int center, int expected_r0,
                                std::int64_t trials, std::uint64_t seed) {
    CheckReport rep;
    rep.name = "bunker(center=" + std::to_string(center) + ")";
    auto prof = growth_moment(g, center);
    if (prof.r0 != expected_r0) {
        rep.record(false, "r0 = " + std::to_string(prof.r0) + ", expected " +
                              std::to_string(expected_r0));
        return rep;
    }
    auto shelter = g.ball(center, prof.r0 + 2);
    auto budget = detail::run_budget(g);
    for (std::int64_t k = 0; k < trials; ++k) {
        Rng rng(derive_seed(seed, 41, k));
        std::int8_t s = rng.coin() ? 1 : -1;
        OpinionConfig c0 = detail::random_config(g.n, rng);
        for (int v : shelter) c0[v] = s;
        bool good = true;
        std::string why;
        try {
            auto run = run_sync_until_cycle(g, c0, int(budget.sync_rounds));
            for (auto& c : run.configs)
                if (c[center] != s) {
                    good = false;
                    why = "sync center flipped";
                    break;
                }
            auto res = run_async(g, c0, derive_seed(seed, 42, k),
                                 detail::async_caps(g, budget.async_flips, true));
            if (count_flips(res.run, center) != 0 || res.run.final_config[center] != s) {
                good = false;
                why = "async center flipped";
            }
        } catch (const Error& e) {
            good = false;
            why = e.what();
        }
        rep.record(good, "trial " + std::to_string(k) + ": " + why);
    }
    return rep;
}

// The step identity L_t - L_{t-dt} = -J_t and the monotone decay of L, on
// random instances with the distance-decaying legal weighting. Float runs
// must land within `tol`; rational runs must land on zero exactly.
struct LyapunovCheckParams {
    std::int64_t sync_trials = 0;
    std::int64_t async_trials = 0;
    std::int64_t rational_trials = 0;  // alternating sync/async
    int n_max = 40;
    int d_max = 7;
    double tol = 1e-9;
};

inline CheckReport check_lyapunov(const LyapunovCheckParams& par, std::uint64_t seed) {
    CheckReport rep;
    rep.name = "lyapunov_identity";

    auto run_one = [&](std::int64_t k, bool async_model, bool rational) {
        Rng rng(derive_seed(seed, async_model ? 22 : 21, k));
        Graph g = random_odd_graph(par.n_max, par.d_max, rng);
        int base = int(rng.below(std::uint64_t(g.n)));
        OpinionConfig c0 = detail::random_config(g.n, rng);
        bool good = true;
        std::string why;
        try {
            double residual = 0.0;
            bool monotone = true;
            if (rational) {
                auto w = make_weighting<Rational>(g, base, g.d_max);
                if (!async_model) {
                    auto er = energy_report_sync(g, w, run_sync_until_cycle(g, c0));
                    monotone = er.monotone;
                    if (er.max_residual != Rational(0)) residual = 1.0;
                } else {
                    auto budget = detail::run_budget(g);
                    auto res = run_async(g, c0, derive_seed(seed, 23, k),
                                         detail::async_caps(g, budget.async_flips, true));
                    auto er = energy_report_async(g, w, res.run);
                    monotone = er.monotone;
                    if (er.max_residual != Rational(0)) residual = 1.0;
                }
                if (residual != 0.0) {
                    good = false;
                    why = "nonzero rational residual";
                }
            } else {
                auto w = make_weighting<double>(g, base, g.d_max);
                if (!async_model) {
                    auto er = energy_report_sync(g, w, run_sync_until_cycle(g, c0));
                    monotone = er.monotone;
                    residual = er.max_residual;
                } else {
                    auto budget = detail::run_budget(g);
                    auto res = run_async(g, c0, derive_seed(seed, 23, k),
                                         detail::async_caps(g, budget.async_flips, true));
                    auto er = energy_report_async(g, w, res.run);
                    monotone = er.monotone;
                    residual = er.max_residual;
                }
                rep.stat = std::max(rep.stat, residual);
                if (residual > par.tol) {
                    good = false;
                    why = "residual " + std::to_string(residual);
                }
            }
            if (!monotone) {
                good = false;
                why = "energy increased";
            }
        } catch (const Error& e) {
            good = false;
            why = e.what();
        }
        rep.record(good, std::string(rational ? "rational " : "") +
                             (async_model ? "async" : "sync") + " trial " + std::to_string(k) +
                             ": " + why);
    };

    for (std::int64_t k = 0; k < par.sync_trials; ++k) run_one(k, false, false);
    for (std::int64_t k = 0; k < par.async_trials; ++k) run_one(k, true, false);
    for (std::int64_t k = 0; k < par.rational_trials; ++k) run_one(k, k % 2 == 1, true);
    return rep;
}

// Small patches cannot conquer a torus for long: the number of double-flip
// events over any run is at most the seed set's initial disagreement energy,
// all in exact integers.
inline CheckReport check_monopoly_torus(int rows, int cols, std::int64_t trials,
                                        std::uint64_t seed) {
    CheckReport rep;
    rep.name = "monopoly_budget(torus " + std::to_string(rows) + "x" + std::to_string(cols) + ")";
    Graph g = gen_torus(rows, cols);
    for (std::int64_t k = 0; k < trials; ++k) {
        Rng rng(derive_seed(seed, 51, k));
        std::vector<int> seeds;
        switch (k % 3) {
            case 0:
                seeds.push_back(int(rng.below(std::uint64_t(g.n))));
                break;
            case 1:
                while (seeds.size() < 5) {
                    int v = int(rng.below(std::uint64_t(g.n)));
                    bool dup = false;
                    for (int s : seeds) dup = dup || s == v;
                    if (!dup) seeds.push_back(v);
                }
                break;
            default: {
                int r = int(rng.below(std::uint64_t(rows)));
                for (int c = 0; c < cols; ++c) seeds.push_back(r * cols + c);
                break;
            }
        }
        bool good = true;
        std::string why;
        try {
            auto mono = monopoly_flip_budget(g, seeds);
            if (!mono.within_budget) {
                good = false;
                why = std::to_string(mono.flip_events) + " events > budget " +
                      std::to_string(mono.budget);
            }
            if (!mono.identity_exact) {
                good = false;
                why = "integer step identity violated";
            }
            rep.stat = std::max(rep.stat, mono.budget > 0 ? double(mono.flip_events) /
                                                                double(mono.budget)
                                                          : 0.0);
        } catch (const Error& e) {
            good = false;
            why = e.what();
        }
        rep.record(good, "trial " + std::to_string(k) + " (|W|=" + std::to_string(seeds.size()) +
                             "): " + why);
    }
    return rep;
}

// Splicing the bipartite gadget into a regular base: both sides of every
// copy are internally unanimous from round 2 on, whatever the surroundings
// do, and the whole graph still settles into a period <= 2 orbit.
inline CheckReport check_gadget(const Graph& base, const std::vector<std::pair<int, int>>& cut,
                                std::int64_t trials, std::uint64_t seed,
                                const std::string& label) {
    CheckReport rep;
    rep.name = "gadget(" + label + ")";
    auto gg = gen_gadget_graph(base, cut);
    for (std::int64_t k = 0; k < trials; ++k) {
        Rng rng(derive_seed(seed, 61, k));
        OpinionConfig c0 = detail::random_config(gg.g.n, rng);
        bool good = true;
        std::string why;
        try {
            auto run = run_sync_until_cycle(gg.g, c0);
            for (std::size_t ci = 0; ci < gg.copies.size() && good; ++ci) {
                for (int t = 2; t < int(run.configs.size()); ++t) {
                    if (!detail::unanimous(run.configs[t], gg.copies[ci].side_a) ||
                        !detail::unanimous(run.configs[t], gg.copies[ci].side_b)) {
                        good = false;
                        why = "copy " + std::to_string(ci) + " split at t=" + std::to_string(t);
                        break;
                    }
                }
            }
        } catch (const Error& e) {
            good = false;
            why = e.what();
        }
        rep.record(good, "trial " + std::to_string(k) + ": " + why);
    }
    return rep;
}

}  // namespace majority
