#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "majority/error.hpp"

namespace majority {

// Finite undirected graph on vertices 0..n-1. A self-loop puts the vertex
// into its own neighbor list exactly once and counts one toward its degree;
// that makes every degree odd after normalization, so majority votes never
// tie. Distances and spheres ignore loops (they never shorten a path).
//
// Immutable after construction: every invariant (symmetry, odd degrees,
// degree cap, connectivity) is checked once in build_graph and holds for
// the object's whole lifetime.
class Graph {
  public:
    int n = 0;
    int d_max = 0;
    std::vector<std::vector<int>> adj;        // sorted; own id present iff loop
    std::vector<std::pair<int, int>> edges;   // undirected, u <= v, loops as (u,u)

    int degree(int i) const { return int(adj[i].size()); }

    bool has_loop(int i) const {
        return std::binary_search(adj[i].begin(), adj[i].end(), i);
    }

    bool adjacent(int u, int v) const {
        return std::binary_search(adj[u].begin(), adj[u].end(), v);
    }

    // BFS distances from src; loops skipped by the visited check.
    std::vector<int> distances(int src) const {
        std::vector<int> dist(n, -1);
        std::queue<int> q;
        dist[src] = 0;
        q.push(src);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    q.push(v);
                }
            }
        }
        return dist;
    }

    // vertices within graph distance r of src, ascending
    std::vector<int> ball(int src, int r) const {
        std::vector<int> out;
        auto dist = distances(src);
        for (int v = 0; v < n; ++v)
            if (dist[v] >= 0 && dist[v] <= r) out.push_back(v);
        return out;
    }

    int eccentricity(int src) const {
        auto dist = distances(src);
        int e = 0;
        for (int v = 0; v < n; ++v) e = std::max(e, dist[v]);
        return e;
    }
};

// Raw material for build_graph / normalize_odd_degrees: an edge list plus
// the set of looped vertices, not yet validated.
struct EdgeList {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u != v
    std::vector<int> loops;
};

// Validate and freeze a graph. Errors, in checking order: invalid_params
// (bad n / vertex ids / loop passed as edge), duplicate_edge, degree_exceeded,
// even_degree, disconnected.
inline Graph build_graph(const EdgeList& raw, int d_max) {
    if (raw.n <= 0) fail(errc::invalid_params, "graph needs at least one vertex");
    if (d_max < 1) fail(errc::invalid_params, "d_max must be positive");

    Graph g;
    g.n = raw.n;
    g.d_max = d_max;
    g.adj.assign(raw.n, {});

    std::set<std::pair<int, int>> seen;
    auto add = [&](int u, int v) {
        if (u < 0 || u >= raw.n || v < 0 || v >= raw.n)
            fail(errc::invalid_params, "vertex id out of range");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            fail(errc::duplicate_edge,
                 "duplicate edge " + std::to_string(key.first) + "-" + std::to_string(key.second),
                 key.first);
        g.edges.push_back(key);
        g.adj[u].push_back(v);
        if (u != v) g.adj[v].push_back(u);
    };

    for (auto [u, v] : raw.edges) {
        if (u == v)
            fail(errc::invalid_params, "self-loop must be declared as a loop, not an edge", u);
        add(u, v);
    }
    for (int u : raw.loops) add(u, u);

    std::sort(g.edges.begin(), g.edges.end());
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());

    for (int i = 0; i < g.n; ++i) {
        if (g.degree(i) > d_max)
            fail(errc::degree_exceeded,
                 "vertex " + std::to_string(i) + " has degree " + std::to_string(g.degree(i)) +
                     " > d_max " + std::to_string(d_max),
                 i);
    }
    for (int i = 0; i < g.n; ++i) {
        if (g.degree(i) % 2 == 0)
            fail(errc::even_degree, "vertex " + std::to_string(i) + " has even degree", i);
    }

    auto dist = g.distances(0);
    for (int i = 0; i < g.n; ++i)
        if (dist[i] < 0) fail(errc::disconnected, "graph is not connected", i);

    return g;
}

// Make every degree odd by toggling self-loops: an even-degree vertex gets
// its loop removed if present, else a loop added provided that stays within
// its base-graph degree cap. degree_cap[i] is what the vertex carried in the
// base family; a single int means the same cap everywhere.
inline Graph normalize_odd_degrees(const EdgeList& raw, const std::vector<int>& degree_cap,
                                   int d_max) {
    if (int(degree_cap.size()) != raw.n)
        fail(errc::invalid_params, "degree_cap size mismatch");

    EdgeList fixed = raw;
    std::vector<int> deg(raw.n, 0);
    std::vector<char> looped(raw.n, 0);
    for (auto [u, v] : raw.edges) {
        ++deg[u];
        ++deg[v];
    }
    for (int u : raw.loops) {
        ++deg[u];
        looped[u] = 1;
    }

    for (int i = 0; i < raw.n; ++i) {
        if (deg[i] % 2 != 0) continue;
        if (looped[i]) {
            fixed.loops.erase(std::find(fixed.loops.begin(), fixed.loops.end(), i));
        } else if (deg[i] < degree_cap[i]) {
            fixed.loops.push_back(i);
        } else {
            fail(errc::cannot_normalize,
                 "vertex " + std::to_string(i) + " is even and at its degree cap", i);
        }
    }
    return build_graph(fixed, d_max);
}

inline Graph normalize_odd_degrees(const EdgeList& raw, int uniform_cap, int d_max) {
    return normalize_odd_degrees(raw, std::vector<int>(raw.n, uniform_cap), d_max);
}

// n_r(G, i) for r = 0..R: how many vertices sit at each graph distance.
inline std::vector<std::int64_t> sphere_sizes(const Graph& g, int i, int R) {
    if (i < 0 || i >= g.n) fail(errc::invalid_params, "vertex out of range", i);
    if (R < 0) fail(errc::invalid_params, "R must be >= 0");
    std::vector<std::int64_t> counts(R + 1, 0);
    auto dist = g.distances(i);
    for (int v = 0; v < g.n; ++v)
        if (dist[v] >= 0 && dist[v] <= R) ++counts[dist[v]];
    return counts;
}

}  // namespace majority
