#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/error.hpp"
#include "majority/generators.hpp"
#include "majority/graph.hpp"
#include "majority/lightcone.hpp"
#include "majority/rng.hpp"

namespace majority {

// --------------------------------------------------------------------------
// World sampling: a hidden state S (fair coin), observed by each vertex
// independently with success probability p.

struct WorldSample {
    std::int8_t state = 1;
    OpinionConfig initial;
    std::uint64_t seed = 0;
};

inline WorldSample sample_world(const Graph& g, double p, std::uint64_t seed) {
    if (!(p > 0.5 && p < 1.0)) fail(errc::invalid_p, "signal quality p must lie in (1/2, 1)");
    Rng rng(seed);
    WorldSample w;
    w.seed = seed;
    w.state = rng.coin() ? std::int8_t(1) : std::int8_t(-1);
    w.initial.resize(g.n);
    for (int i = 0; i < g.n; ++i)
        w.initial[i] = rng.uniform01() < p ? w.state : std::int8_t(-w.state);
    return w;
}

// --------------------------------------------------------------------------
// r-separated vertex sets via i.i.d. exponential marks: i joins W when its
// mark beats every other vertex within distance r. Members end up pairwise
// farther than r apart, and the global minimum always qualifies, so W is
// never empty. Each vertex joins with probability 1/|B(i,r)|.

using BallTable = std::vector<std::vector<int>>;  // per vertex: others within distance r

inline BallTable ball_table(const Graph& g, int r) {
    if (r < 0) fail(errc::invalid_params, "separation radius must be >= 0");
    BallTable t(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int v : g.ball(i, r))
            if (v != i) t[i].push_back(v);
    return t;
}

inline std::vector<int> select_W(const BallTable& near, const std::vector<double>& marks) {
    if (near.size() != marks.size()) fail(errc::size_mismatch, "need one mark per vertex");
    std::vector<int> w;
    for (std::size_t i = 0; i < near.size(); ++i) {
        bool lowest = true;
        for (int j : near[i])
            if (!(marks[i] < marks[j])) {
                lowest = false;
                break;
            }
        if (lowest) w.push_back(int(i));
    }
    return w;
}

inline std::vector<int> select_W(const Graph& g, int r, const std::vector<double>& marks) {
    return select_W(ball_table(g, r), marks);
}

inline std::vector<double> exponential_marks(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> m(n);
    for (auto& x : m) x = rng.exponential();
    return m;
}

inline std::vector<int> select_W(const Graph& g, int r, std::uint64_t seed) {
    return select_W(g, r, exponential_marks(g.n, seed));
}

// Greedy scan in id order keeping a vertex when its radius-ball misses every
// ball already kept; the result is maximal, and centers sit pairwise farther
// than 2*radius apart.
inline std::vector<int> greedy_disjoint_balls(const Graph& g, int radius) {
    if (radius < 0) fail(errc::invalid_params, "ball radius must be >= 0");
    std::vector<char> blocked(g.n, 0);
    std::vector<int> centers;
    for (int i = 0; i < g.n; ++i) {
        if (blocked[i]) continue;
        centers.push_back(i);
        for (int v : g.ball(i, 2 * radius)) blocked[v] = 1;
    }
    return centers;
}

// Radius beyond which time-t opinions cannot have interacted: exact 2t in
// the synchronous model, Monte Carlo with recorded confidence otherwise.
inline int causal_radius(Model model, const Graph& g, double t, double delta, int trials,
                         std::uint64_t seed, const std::vector<int>& representatives = {0}) {
    if (model == Model::sync) return causal_radius_sync(int(std::llround(t)));
    return causal_radius_async(g, t, delta, trials, seed, representatives);
}

// --------------------------------------------------------------------------
// Estimators: sign votes over some vertex pool, ties broken by a fair coin
// from the caller's RNG stream and flagged so the accounting stays clean.

struct Estimate {
    std::int8_t guess = 1;
    bool tie = false;
};

inline Estimate sign_vote(std::int64_t sum, Rng& tie_coin) {
    if (sum > 0) return {std::int8_t(1), false};
    if (sum < 0) return {std::int8_t(-1), false};
    return {tie_coin.coin() ? std::int8_t(1) : std::int8_t(-1), true};
}

inline Estimate estimate_initial_majority(const OpinionConfig& c0, Rng& tie_coin) {
    if (c0.empty()) fail(errc::missing_data, "initial opinions required");
    std::int64_t s = 0;
    for (auto v : c0) s += v;
    return sign_vote(s, tie_coin);
}

// Majority over an explicit voter list; an empty list means every vertex.
inline Estimate estimate_limit_majority(const OpinionConfig& limits, const std::vector<int>& voters,
                                        Rng& tie_coin) {
    if (limits.empty()) fail(errc::missing_data, "limit opinions required");
    std::int64_t s = 0;
    if (voters.empty()) {
        for (auto v : limits) s += v;
    } else {
        for (int v : voters) {
            if (v < 0 || v >= int(limits.size()))
                fail(errc::invalid_params, "voter id out of range", v);
            s += limits[v];
        }
    }
    return sign_vote(s, tie_coin);
}

// Majority of time-t opinions over the first n members of an r-separated set.
inline Estimate estimate_cone_majority(const OpinionConfig& at_t, const std::vector<int>& w_set,
                                       int n, Rng& tie_coin) {
    if (at_t.empty()) fail(errc::missing_data, "opinions at the sampling time required");
    if (n < 1) fail(errc::invalid_params, "need at least one voter");
    if (int(w_set.size()) < n)
        fail(errc::w_not_large_enough,
             "separated set has " + std::to_string(w_set.size()) + " members, need " +
                 std::to_string(n));
    std::int64_t s = 0;
    for (int k = 0; k < n; ++k) s += at_t[w_set[k]];
    return sign_vote(s, tie_coin);
}

struct EstimatorResult {
    std::string estimator;
    std::int64_t trials = 0;   // trials actually counted
    std::int64_t errors = 0;
    std::int64_t ties = 0;
    std::int64_t skipped = 0;  // attempts dropped before voting (voter pool too small)
    double error_rate = 0.0;
    double sigma3 = 0.0;       // 3x normal-approximation std dev of error_rate

    void finalize() {
        error_rate = trials > 0 ? double(errors) / double(trials) : 0.0;
        sigma3 = trials > 0
                     ? 3.0 * std::sqrt(error_rate * (1.0 - error_rate) / double(trials))
                     : 0.0;
    }
};

// --------------------------------------------------------------------------
// Monte Carlo reconstruction error of a named estimator. Per-trial RNG
// streams are derived from the master seed, so results replay bit-exactly.

enum class EstimatorKind { initial_majority, cone_majority, limit_majority };

struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::limit_majority;
    std::vector<int> voters;  // limit_majority: fixed voter list; empty = every vertex
    int t = 0;                // cone_majority: sampling round
    int n = 0;                // cone_majority: voters taken from W
    int r = 0;                // cone_majority: W separation radius

    std::string id() const {
        switch (kind) {
            case EstimatorKind::initial_majority:
                return "initial_majority";
            case EstimatorKind::cone_majority:
                return "cone_majority(t=" + std::to_string(t) + ",n=" + std::to_string(n) +
                       ",r=" + std::to_string(r) + ")";
            case EstimatorKind::limit_majority:
                return voters.empty() ? std::string("limit_majority(all)")
                                      : "limit_majority(" + std::to_string(voters.size()) +
                                            " voters)";
        }
        return "unknown";
    }
};

namespace detail {

// Seed stream tags; every consumer of randomness inside a trial gets its own.
enum : std::uint64_t {
    stream_world = 1,
    stream_tie = 2,
    stream_marks = 3,
    stream_schedule = 4,
    stream_subgraph = 5,
};

inline OpinionConfig limit_config(const Graph& g, const OpinionConfig& c0, Model model,
                                  std::uint64_t sched_seed) {
    if (model == Model::sync) return limit_opinions(run_sync_until_cycle(g, c0));
    AsyncOptions opt;
    opt.record_events = false;
    return run_async(g, c0, sched_seed, opt).run.final_config;
}

}  // namespace detail

inline EstimatorResult monte_carlo_delta(const Graph& g, double p, const EstimatorSpec& spec,
                                         std::int64_t trials, std::uint64_t seed,
                                         Model model = Model::sync) {
    if (trials < 1) fail(errc::invalid_params, "need trials >= 1");
    EstimatorResult res;
    res.estimator = spec.id();
    BallTable near;
    if (spec.kind == EstimatorKind::cone_majority) near = ball_table(g, spec.r);

    for (std::int64_t k = 0; k < trials; ++k) {
        auto world = sample_world(g, p, derive_seed(seed, detail::stream_world, k));
        Rng tie_coin(derive_seed(seed, detail::stream_tie, k));
        Estimate est;
        switch (spec.kind) {
            case EstimatorKind::initial_majority:
                est = estimate_initial_majority(world.initial, tie_coin);
                break;
            case EstimatorKind::cone_majority: {
                auto w_set = select_W(
                    near, exponential_marks(g.n, derive_seed(seed, detail::stream_marks, k)));
                if (int(w_set.size()) < spec.n) {
                    ++res.skipped;
                    continue;
                }
                OpinionConfig c = world.initial;
                for (int s = 0; s < spec.t; ++s) c = step_sync(g, c);
                est = estimate_cone_majority(c, w_set, spec.n, tie_coin);
                break;
            }
            case EstimatorKind::limit_majority: {
                auto z = detail::limit_config(g, world.initial, model,
                                              derive_seed(seed, detail::stream_schedule, k));
                est = estimate_limit_majority(z, spec.voters, tie_coin);
                break;
            }
        }
        ++res.trials;
        if (est.tie) ++res.ties;
        if (est.guess != world.state) ++res.errors;
    }
    res.finalize();
    return res;
}

// --------------------------------------------------------------------------
// Convergence-speed probe: how often does the round-2t opinion still differ
// from the limit? Reported per representative vertex with a soft trend check
// (weakly decreasing in t up to pooled 3-sigma noise).

struct QReport {
    std::vector<int> t_values;
    std::vector<int> representatives;
    std::vector<std::vector<double>> rate;  // [rep][t index]
    std::int64_t trials = 0;
    bool weakly_decreasing = true;
};

inline QReport empirical_q(const Graph& g, double p, const std::vector<int>& t_values,
                           std::int64_t trials, std::uint64_t seed,
                           const std::vector<int>& representatives = {0}) {
    if (trials < 1) fail(errc::invalid_params, "need trials >= 1");
    QReport rep;
    rep.t_values = t_values;
    rep.representatives = representatives;
    rep.trials = trials;
    std::vector<std::vector<std::int64_t>> miss(representatives.size(),
                                                std::vector<std::int64_t>(t_values.size(), 0));
    for (std::int64_t k = 0; k < trials; ++k) {
        auto world = sample_world(g, p, derive_seed(seed, detail::stream_world, k));
        auto run = run_sync_until_cycle(g, world.initial);
        auto limit = limit_opinions(run);
        for (std::size_t ri = 0; ri < representatives.size(); ++ri) {
            int v = representatives[ri];
            for (std::size_t ti = 0; ti < t_values.size(); ++ti)
                if (config_at(run, 2 * t_values[ti])[v] != limit[v]) ++miss[ri][ti];
        }
    }
    rep.rate.assign(representatives.size(), std::vector<double>(t_values.size(), 0.0));
    for (std::size_t ri = 0; ri < representatives.size(); ++ri) {
        for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
            rep.rate[ri][ti] = double(miss[ri][ti]) / double(trials);
            if (ti > 0) {
                double a = rep.rate[ri][ti - 1], b = rep.rate[ri][ti];
                double pooled =
                    std::sqrt((a * (1 - a) + b * (1 - b)) / double(trials));
                if (b > a + 3.0 * pooled) rep.weakly_decreasing = false;
            }
        }
    }
    return rep;
}

// --------------------------------------------------------------------------
// Monotone learning: at every time t, a vertex's opinion matches the hidden
// state at least as often as its initial signal did. Checked per vertex per
// time against p minus 3 sigma.

struct LearningReport {
    std::vector<double> t_values;
    std::int64_t trials = 0;
    double p = 0.0;
    double sigma3 = 0.0;                    // 3 sqrt(p(1-p)/trials)
    std::vector<std::vector<double>> rate;  // [t index][vertex]
    double min_rate = 1.0;
    int worst_vertex = -1;
    double worst_t = 0.0;
    bool ok = true;
};

inline LearningReport check_monotone_learning(const Graph& g, double p,
                                              const std::vector<double>& t_values,
                                              std::int64_t trials, std::uint64_t seed,
                                              Model model) {
    if (trials < 1) fail(errc::invalid_params, "need trials >= 1");
    LearningReport rep;
    rep.t_values = t_values;
    rep.trials = trials;
    rep.p = p;
    rep.sigma3 = 3.0 * std::sqrt(p * (1.0 - p) / double(trials));

    std::vector<double> sorted_t = t_values;
    std::sort(sorted_t.begin(), sorted_t.end());
    std::vector<std::vector<std::int64_t>> agree(t_values.size(),
                                                 std::vector<std::int64_t>(g.n, 0));
    for (std::int64_t k = 0; k < trials; ++k) {
        auto world = sample_world(g, p, derive_seed(seed, detail::stream_world, k));
        if (model == Model::sync) {
            auto run = run_sync_until_cycle(g, world.initial);
            for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
                const auto& c = config_at(run, int(std::llround(t_values[ti])));
                for (int i = 0; i < g.n; ++i)
                    if (c[i] == world.state) ++agree[ti][i];
            }
        } else {
            AsyncOptions opt;
            opt.until_stable = false;
            opt.t_end = sorted_t.back();
            opt.snapshot_times = sorted_t;
            opt.record_events = false;
            auto result = run_async(g, world.initial, derive_seed(seed, detail::stream_schedule, k),
                                    opt);
            for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
                auto pos = std::lower_bound(sorted_t.begin(), sorted_t.end(), t_values[ti]) -
                           sorted_t.begin();
                const auto& c = result.snapshots[pos];
                for (int i = 0; i < g.n; ++i)
                    if (c[i] == world.state) ++agree[ti][i];
            }
        }
    }
    rep.rate.assign(t_values.size(), std::vector<double>(g.n, 0.0));
    for (std::size_t ti = 0; ti < t_values.size(); ++ti)
        for (int i = 0; i < g.n; ++i) {
            double r = double(agree[ti][i]) / double(trials);
            rep.rate[ti][i] = r;
            if (r < rep.min_rate) {
                rep.min_rate = r;
                rep.worst_vertex = i;
                rep.worst_t = t_values[ti];
            }
        }
    rep.ok = rep.min_rate >= p - rep.sigma3;
    return rep;
}

// --------------------------------------------------------------------------
// Majority over a freshly separated set of time-t opinions, measured against
// the closed-form bound exp(-(p-1/2)^2 n / (2p)) + n^2 delta. Trials whose
// separated set comes up smaller than n are skipped and reported; skipping
// is independent of the opinions, so the counted trials stay unbiased. An
// independence probe tracks pairwise correlations of far-apart agreement
// indicators, which should vanish when the pairs cannot have interacted.

struct CesaroReport {
    int t = 0;
    int n = 0;
    int r = 0;
    double p = 0.0;
    double delta = 0.0;
    double bound = 0.0;
    std::int64_t attempts = 0;
    std::int64_t trials = 0;
    std::int64_t skipped = 0;
    std::int64_t errors = 0;
    std::int64_t ties = 0;
    double error_rate = 0.0;
    double sigma3 = 0.0;
    bool ok = false;
    std::vector<std::pair<int, int>> probe_pairs;
    std::vector<double> correlation;
    double corr_limit = 0.0;  // 3/sqrt(attempts)
    bool independence_ok = true;
};

inline CesaroReport check_cesaro_bound(const Graph& g, double p, int t, double delta, int n,
                                       std::int64_t trials, std::uint64_t seed,
                                       std::vector<std::pair<int, int>> probe_pairs = {}) {
    if (trials < 1) fail(errc::invalid_params, "need trials >= 1");
    if (n < 1) fail(errc::invalid_params, "need at least one voter");
    if (!(delta >= 0.0)) fail(errc::invalid_params, "delta must be >= 0");
    CesaroReport rep;
    rep.t = t;
    rep.n = n;
    rep.r = causal_radius_sync(t);
    rep.p = p;
    rep.delta = delta;
    rep.bound = std::exp(-(p - 0.5) * (p - 0.5) * double(n) / (2.0 * p)) +
                double(n) * double(n) * delta;
    rep.attempts = trials;

    if (probe_pairs.empty()) {
        // far-apart centers: disjoint radius-r balls put consecutive picks
        // well past interaction range
        auto centers = greedy_disjoint_balls(g, rep.r);
        for (std::size_t i = 0; i + 1 < centers.size() && rep.probe_pairs.size() < 3; i += 2)
            rep.probe_pairs.emplace_back(centers[i], centers[i + 1]);
    } else {
        rep.probe_pairs = std::move(probe_pairs);
        for (auto& [a, b] : rep.probe_pairs)
            if (g.distances(a)[b] <= rep.r)
                fail(errc::invalid_params, "probe pair within interaction range", a);
    }

    auto near = ball_table(g, rep.r);
    std::size_t np = rep.probe_pairs.size();
    std::vector<std::int64_t> cx(np, 0), cy(np, 0), cxy(np, 0);

    for (std::int64_t k = 0; k < trials; ++k) {
        auto world = sample_world(g, p, derive_seed(seed, detail::stream_world, k));
        OpinionConfig c = world.initial;
        for (int s = 0; s < t; ++s) c = step_sync(g, c);

        for (std::size_t j = 0; j < np; ++j) {
            bool x = c[rep.probe_pairs[j].first] == world.state;
            bool y = c[rep.probe_pairs[j].second] == world.state;
            cx[j] += x;
            cy[j] += y;
            cxy[j] += x && y;
        }

        auto w_set =
            select_W(near, exponential_marks(g.n, derive_seed(seed, detail::stream_marks, k)));
        if (int(w_set.size()) < n) {
            ++rep.skipped;
            continue;
        }
        Rng tie_coin(derive_seed(seed, detail::stream_tie, k));
        auto est = estimate_cone_majority(c, w_set, n, tie_coin);
        ++rep.trials;
        if (est.tie) ++rep.ties;
        if (est.guess != world.state) ++rep.errors;
    }
    if (rep.skipped * 2 > rep.attempts)
        fail(errc::w_not_large_enough,
             "separated set fell short of n in more than half the trials");

    rep.error_rate = rep.trials > 0 ? double(rep.errors) / double(rep.trials) : 0.0;
    rep.sigma3 = rep.trials > 0 ? 3.0 * std::sqrt(rep.error_rate * (1.0 - rep.error_rate) /
                                                  double(rep.trials))
                                : 0.0;
    rep.ok = rep.error_rate <= rep.bound + rep.sigma3;

    rep.corr_limit = 3.0 / std::sqrt(double(trials));
    for (std::size_t j = 0; j < np; ++j) {
        double ex = double(cx[j]) / trials, ey = double(cy[j]) / trials;
        double cov = double(cxy[j]) / trials - ex * ey;
        double vx = ex * (1 - ex), vy = ey * (1 - ey);
        double corr = (vx > 0 && vy > 0) ? cov / std::sqrt(vx * vy) : 0.0;
        rep.correlation.push_back(corr);
        if (std::abs(corr) > rep.corr_limit) rep.independence_ok = false;
    }
    return rep;
}

// --------------------------------------------------------------------------
// Retention on random subgraphs, desk scale: percolate a transitive base,
// keep the giant component (a stand-in for an invariant random subgraph,
// flagged as such in every report), re-establish odd degrees, then run the
// separated-set limit-majority estimator with marks drawn on the base.

struct SubgraphPipelineOptions {
    double q = 0.8;  // per-edge retention probability
    double p = 0.9;  // signal quality
    int r = 4;       // separation radius, measured in the base graph
    int n = 15;      // voters
    std::int64_t trials = 1000;
};

struct SubgraphPipelineReport {
    EstimatorResult result;
    bool stand_in = true;  // finite percolation component, not a genuine invariant subgraph
    std::int64_t degenerate = 0;  // trials whose component was too small to rebuild
    double mean_component = 0.0;
    double mean_voters = 0.0;
    bool ok = false;  // information demonstrably retained: rate < 1/2 - 3 sigma
};

inline SubgraphPipelineReport percolation_retention(const Graph& base,
                                                    const SubgraphPipelineOptions& o,
                                                    std::uint64_t seed) {
    if (o.trials < 1) fail(errc::invalid_params, "need trials >= 1");
    SubgraphPipelineReport rep;
    rep.result.estimator = "limit_majority(subgraph,n=" + std::to_string(o.n) +
                           ",r=" + std::to_string(o.r) + ",q=" + std::to_string(o.q) + ")";
    auto base_near = ball_table(base, o.r);
    double comp_sum = 0.0, voter_sum = 0.0;
    std::int64_t measured = 0;

    for (std::int64_t k = 0; k < o.trials; ++k) {
        PercolationResult perc;
        try {
            perc = gen_percolation_subgraph(base, o.q, derive_seed(seed, detail::stream_subgraph, k));
        } catch (const Error& e) {
            if (e.code() == errc::degenerate_component) {
                ++rep.degenerate;
                continue;
            }
            throw;
        }
        comp_sum += perc.g.n;
        ++measured;

        std::vector<int> to_comp(base.n, -1);
        for (int idx = 0; idx < perc.g.n; ++idx) to_comp[perc.original_id[idx]] = idx;

        auto w_base = select_W(base_near,
                               exponential_marks(base.n, derive_seed(seed, detail::stream_marks, k)));
        std::vector<int> voters;
        for (int w : w_base)
            if (to_comp[w] >= 0) voters.push_back(to_comp[w]);
        voter_sum += double(voters.size());
        if (int(voters.size()) < o.n) {
            ++rep.result.skipped;
            continue;
        }
        voters.resize(o.n);

        auto world = sample_world(perc.g, o.p, derive_seed(seed, detail::stream_world, k));
        auto limit = limit_opinions(run_sync_until_cycle(perc.g, world.initial));
        Rng tie_coin(derive_seed(seed, detail::stream_tie, k));
        auto est = estimate_limit_majority(limit, voters, tie_coin);
        ++rep.result.trials;
        if (est.tie) ++rep.result.ties;
        if (est.guess != world.state) ++rep.result.errors;
    }
    rep.result.finalize();
    rep.mean_component = measured > 0 ? comp_sum / double(measured) : 0.0;
    rep.mean_voters = measured > 0 ? voter_sum / double(measured) : 0.0;
    rep.ok = rep.result.trials > 0 && rep.result.error_rate < 0.5 - rep.result.sigma3;
    return rep;
}

}  // namespace majority
