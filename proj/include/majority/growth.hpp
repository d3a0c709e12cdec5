#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "majority/graph.hpp"

namespace majority {

// Growth data of a rooted graph: sphere sizes n_r, the discounted moment
// M = sum_r a^-r n_r with a = (d+1)/(d-1), and the bunker radius r0 =
// smallest r0 with a*2d*sum_{r>r0} a^-r n_r < 1. Slow growth (finite M)
// is what makes the weighted energy argument work; r0+2 is the ball an
// initial consensus needs in order to freeze its center forever.
struct GrowthProfile {
    int base = 0;
    int d = 0;                          // degree bound the discount uses
    std::vector<std::int64_t> spheres;  // n_0..n_R
    double moment = 0.0;
    int r0 = -1;            // -1: condition not met within the profile
    bool truncated = false; // profile does not account for every vertex

    double a() const { return double(d + 1) / double(d - 1); }
};

namespace detail {

// Fill moment and r0 from spheres already in place. tail_beyond is the
// exact discounted tail mass past the last stored sphere (0 for complete
// profiles; the analytic constructors pass the closed-form remainder).
inline void finish_profile(GrowthProfile& p, double tail_beyond = 0.0) {
    double inv_a = 1.0 / p.a();
    double w = 1.0;
    p.moment = tail_beyond;
    for (std::size_t r = 0; r < p.spheres.size(); ++r) {
        p.moment += w * double(p.spheres[r]);
        w *= inv_a;
    }
    // suffix tails, exact order: tail(k) = sum_{r>k} a^-r n_r
    std::vector<double> tail(p.spheres.size() + 1, tail_beyond);
    w = std::pow(inv_a, double(p.spheres.size() - 1));
    for (int r = int(p.spheres.size()) - 1; r >= 0; --r) {
        tail[r] = tail[r + 1] + w * double(p.spheres[r]);
        w /= inv_a;
    }
    double factor = p.a() * 2.0 * p.d;
    p.r0 = -1;
    for (std::size_t k = 0; k + 1 <= p.spheres.size(); ++k) {
        if (factor * tail[k + 1] < 1.0) {
            p.r0 = int(k);
            break;
        }
    }
}

}  // namespace detail

// Growth data measured on a concrete graph by BFS from i, spheres up to R.
// d must be odd and >= 3 (a = (d+1)/(d-1) needs d > 1; odd keeps votes
// tie-free); pass the graph's d_max unless checking a family-level bound.
inline GrowthProfile growth_moment(const Graph& g, int i, int d, int R) {
    if (d < 3 || d % 2 == 0) fail(errc::invalid_params, "degree bound must be odd and >= 3");
    GrowthProfile p;
    p.base = i;
    p.d = d;
    p.spheres = sphere_sizes(g, i, R);
    std::int64_t seen = std::accumulate(p.spheres.begin(), p.spheres.end(), std::int64_t(0));
    p.truncated = seen < g.n;
    detail::finish_profile(p);
    if (p.truncated) p.r0 = -1;  // unknown tail makes the condition unverifiable
    return p;
}

inline GrowthProfile growth_moment(const Graph& g, int i, int R) {
    return growth_moment(g, i, g.d_max, R);
}

inline GrowthProfile growth_moment(const Graph& g, int i) {
    return growth_moment(g, i, g.d_max, g.n);
}

// Growth data for an analytic family profile f(r), e.g. the infinite path
// (f = 2 for r >= 1) or the torus family bound f(r) = 4r. Terms are summed
// until they stop contributing at double precision, so the moment and r0
// are exact to rounding for any geometrically dominated profile.
inline GrowthProfile growth_from_profile(const std::function<std::int64_t(int)>& f, int d,
                                         int r_cap = 1 << 20) {
    if (d < 3 || d % 2 == 0) fail(errc::invalid_params, "degree bound must be odd and >= 3");
    GrowthProfile p;
    p.d = d;
    double inv_a = 1.0 / p.a();
    double w = 1.0;
    double partial = 0.0;
    int r = 0;
    for (; r <= r_cap; ++r) {
        std::int64_t nr = f(r);
        if (nr < 0) fail(errc::invalid_params, "profile values must be >= 0");
        double term = w * double(nr);
        partial += term;
        if (partial > 1e18 || (r > 4096 && term >= 1.0))
            fail(errc::invalid_params, "discounted profile does not converge");
        p.spheres.push_back(nr);
        if (r > 0 && term > 0.0 && term < 1e-300) break;  // converged
        if (r > 64 && term == 0.0 && f(r - 1) == 0 && f(r - 2) == 0) break;
        w *= inv_a;
    }
    p.truncated = r > r_cap;
    detail::finish_profile(p);
    return p;
}

// Flip-count ceilings from the growth moment: a vertex with profile p
// double-flips (sync, A_{t+1} != A_{t-1}) at most a*d*M times and changes
// opinion (async) at most a*2d*M times over any run.
struct FlipBound {
    double value = 0.0;
    bool is_lower_bound = false;  // set when the profile was truncated
};

inline FlipBound flip_bound_sync(const GrowthProfile& p) {
    return {p.a() * p.d * p.moment, p.truncated};
}

inline FlipBound flip_bound_async(const GrowthProfile& p) {
    return {p.a() * 2.0 * p.d * p.moment, p.truncated};
}

}  // namespace majority
