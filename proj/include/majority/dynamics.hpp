#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "majority/graph.hpp"
#include "majority/rng.hpp"

namespace majority {

// Opinions are +-1; odd degrees mean a neighborhood sum is never zero.
using OpinionConfig = std::vector<std::int8_t>;

enum class Model { sync, async };

inline std::int8_t sign_of(std::int64_t s) { return s > 0 ? 1 : -1; }

inline void check_config(const Graph& g, const OpinionConfig& c) {
    if (int(c.size()) != g.n) fail(errc::size_mismatch, "config size != vertex count");
    for (int i = 0; i < g.n; ++i)
        if (c[i] != 1 && c[i] != -1) fail(errc::invalid_params, "opinions must be +-1", i);
}

// One synchronous round: everyone adopts the sign of their neighborhood sum
// (a self-loop contributes the vertex's own current opinion, once).
inline OpinionConfig step_sync(const Graph& g, const OpinionConfig& c) {
    check_config(g, c);
    OpinionConfig out(g.n);
    for (int i = 0; i < g.n; ++i) {
        std::int64_t s = 0;
        for (int j : g.adj[i]) s += c[j];
        out[i] = sign_of(s);
    }
    return out;
}

// A vertex is content when it already votes with its neighborhood; the
// async dynamics stop changing exactly when everyone is.
inline bool is_stable(const Graph& g, const OpinionConfig& c) {
    for (int i = 0; i < g.n; ++i) {
        std::int64_t s = 0;
        for (int j : g.adj[i]) s += c[j];
        if (sign_of(s) != c[i]) return false;
    }
    return true;
}

// --------------------------------------------------------------------------
// Synchronous trajectories. configs[t] is the round-t configuration; the run
// stops at the first t with A_{t+2} = A_t, after which the orbit provably
// repeats with period 1 or 2 forever.

struct SyncRun {
    std::vector<OpinionConfig> configs;  // 0 .. t_cycle + 2
    int t_cycle = 0;
    int period = 1;
};

inline SyncRun run_sync_until_cycle(const Graph& g, const OpinionConfig& c0,
                                    int t_max = 1 << 20) {
    check_config(g, c0);
    SyncRun run;
    run.configs.push_back(c0);
    for (int t = 1; t <= t_max + 2; ++t) {
        run.configs.push_back(step_sync(g, run.configs.back()));
        if (t >= 2 && run.configs[t] == run.configs[t - 2]) {
            run.t_cycle = t - 2;
            run.period = (run.configs[run.t_cycle + 1] == run.configs[run.t_cycle]) ? 1 : 2;
            return run;
        }
    }
    fail(errc::horizon_exceeded,
         "no period-2 orbit within " + std::to_string(t_max) + " rounds");
}

// Flip count in the double-step sense: the number of rounds t >= 1 with
// A^i_{t+1} != A^i_{t-1}. Beyond t_cycle the orbit has period <= 2, so no
// further rounds qualify.
inline std::int64_t count_flips(const SyncRun& run, int i) {
    std::int64_t flips = 0;
    for (int t = 1; t <= run.t_cycle && t + 1 < int(run.configs.size()); ++t)
        if (run.configs[t + 1][i] != run.configs[t - 1][i]) ++flips;
    return flips;
}

// Opinion changes (A_t vs A_{t-1}); what the flip-log export records.
inline std::vector<int> opinion_change_times(const SyncRun& run, int i) {
    std::vector<int> times;
    for (int t = 1; t < int(run.configs.size()); ++t)
        if (run.configs[t][i] != run.configs[t - 1][i]) times.push_back(t);
    return times;
}

// Opinion vector at an arbitrary round, extending past the stored window by
// periodicity (the stored orbit ends inside the period <= 2 cycle).
inline const OpinionConfig& config_at(const SyncRun& run, int t) {
    if (t < int(run.configs.size())) return run.configs[t];
    return run.configs[run.t_cycle + ((t - run.t_cycle) & 1)];
}

// The limit configuration Z: opinions along the even subsequence, which is
// eventually constant; equivalently the config at the first even time in
// the cycle.
inline OpinionConfig limit_opinions(const SyncRun& run) {
    int t = run.t_cycle;
    if (t % 2 != 0) ++t;
    return run.configs[t];
}

// --------------------------------------------------------------------------
// Asynchronous dynamics: unit-rate Poisson clocks per vertex, updates applied
// at ring times. Simultaneous rings have probability zero; if floating point
// produces one anyway the colliding gap is resampled and counted.

struct AsyncEvent {
    double t = 0.0;
    int v = 0;
    std::int8_t before = 0, after = 0;  // equal when the ring changed nothing
    bool flipped() const { return before != after; }
};

struct AsyncSchedule {
    double horizon = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::pair<double, int>> events;  // strictly increasing times
    std::int64_t tie_resamples = 0;
};

namespace detail {

// Merged Poisson clocks; pop() yields rings in strictly increasing time order,
// resampling the (measure-zero) gap draws that would collide.
class ClockQueue {
  public:
    ClockQueue(int n, Rng& rng) : rng_(rng) {
        for (int v = 0; v < n; ++v) {
            double t = rng_.exponential();
            while (!push(v, t)) {
                ++ties_;
                t = rng_.exponential();
            }
        }
    }

    std::pair<double, int> pop() {
        auto [t, v] = *queue_.begin();
        queue_.erase(queue_.begin());
        times_.erase(t);
        last_ = t;
        double next = t + rng_.exponential();
        while (!push(v, next)) {
            ++ties_;
            next = t + rng_.exponential();
        }
        return {t, v};
    }

    double next_time() const { return queue_.begin()->first; }
    std::int64_t ties() const { return ties_; }

  private:
    bool push(int v, double t) {
        if (t <= last_ || times_.count(t)) return false;
        times_.insert(t);
        queue_.insert({t, v});
        return true;
    }

    std::set<std::pair<double, int>> queue_;
    std::set<double> times_;
    double last_ = -1.0;
    Rng& rng_;
    std::int64_t ties_ = 0;
};

}  // namespace detail

// Every ring up to the horizon, in time order. Gaps per vertex are the raw
// unit-exponential samples, so the count over [0, horizon] is Poisson(n*horizon).
inline AsyncSchedule sample_async_schedule(const Graph& g, double horizon, std::uint64_t seed) {
    if (horizon < 0.0) fail(errc::invalid_params, "horizon must be >= 0");
    AsyncSchedule sched;
    sched.horizon = horizon;
    sched.seed = seed;
    Rng rng(seed);
    detail::ClockQueue clocks(g.n, rng);
    while (clocks.next_time() <= horizon) sched.events.push_back(clocks.pop());
    sched.tie_resamples = clocks.ties();
    return sched;
}

struct AsyncRun {
    OpinionConfig initial, final_config;
    std::vector<AsyncEvent> events;  // every ring, flips flagged
    double t_last_flip = 0.0;
    bool stable = false;
    std::int64_t tie_resamples = 0;
};

struct AsyncOptions {
    // run until the stability predicate holds...
    bool until_stable = true;
    // ...or, if set, until this time (snapshots only make sense here)
    std::optional<double> t_end;
    std::vector<double> snapshot_times;
    // ceilings justified by the finite flip budget; exceeding either is a
    // reportable violation, not a tuning knob
    std::int64_t flip_cap = std::numeric_limits<std::int64_t>::max();
    std::int64_t event_cap = std::numeric_limits<std::int64_t>::max();
    bool record_events = true;
};

struct AsyncResult {
    AsyncRun run;
    std::vector<OpinionConfig> snapshots;  // parallel to sorted snapshot_times
};

inline AsyncResult run_async(const Graph& g, const OpinionConfig& c0, std::uint64_t seed,
                             const AsyncOptions& opt = {}) {
    check_config(g, c0);
    AsyncResult out;
    out.run.initial = c0;
    OpinionConfig c = c0;

    auto content = [&](int i) {
        std::int64_t s = 0;
        for (int j : g.adj[i]) s += c[j];
        return sign_of(s) == c[i];
    };
    std::vector<char> ok(g.n);
    int discontent = 0;
    for (int i = 0; i < g.n; ++i) {
        ok[i] = content(i);
        if (!ok[i]) ++discontent;
    }

    std::vector<double> snaps = opt.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t snap_at = 0;
    auto flush_snapshots = [&](double now) {
        while (snap_at < snaps.size() && snaps[snap_at] < now) {
            out.snapshots.push_back(c);
            ++snap_at;
        }
    };

    Rng rng(seed);
    detail::ClockQueue clocks(g.n, rng);
    std::int64_t flips = 0, events = 0;

    while (true) {
        if (opt.until_stable && discontent == 0) break;
        if (opt.t_end && clocks.next_time() > *opt.t_end) break;

        auto [t, v] = clocks.pop();
        if (++events > opt.event_cap)
            fail(errc::horizon_exceeded, "async run exceeded its event budget");
        flush_snapshots(t);

        std::int64_t s = 0;
        for (int j : g.adj[v]) s += c[j];
        std::int8_t next = sign_of(s);
        AsyncEvent ev{t, v, c[v], next};
        if (ev.flipped()) {
            if (++flips > opt.flip_cap)
                fail(errc::flip_budget_exceeded, "async run exceeded its flip budget", v);
            c[v] = next;
            out.run.t_last_flip = t;
            // v adopted its neighborhood majority, which leaves it content in
            // either loop convention; only the neighbors need rechecking
            if (!ok[v]) --discontent;
            ok[v] = 1;
            for (int w : g.adj[v]) {
                if (w == v) continue;
                char now_ok = content(w);
                if (now_ok != ok[w]) {
                    discontent += now_ok ? -1 : 1;
                    ok[w] = now_ok;
                }
            }
        }
        if (opt.record_events) out.run.events.push_back(ev);
    }

    flush_snapshots(std::numeric_limits<double>::infinity());
    out.run.final_config = c;
    out.run.stable = discontent == 0;
    out.run.tie_resamples = clocks.ties();
    return out;
}

// Async flip count: opinion changes of vertex i, one per flipped ring.
inline std::int64_t count_flips(const AsyncRun& run, int i) {
    std::int64_t flips = 0;
    for (auto& ev : run.events)
        if (ev.v == i && ev.flipped()) ++flips;
    return flips;
}

}  // namespace majority
