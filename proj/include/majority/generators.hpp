#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "majority/graph.hpp"
#include "majority/rng.hpp"

namespace majority {

// Lattice-family generators. Each returns the odd-degree normalized graph:
// even-degree vertices pick up a self-loop, which the family degree cap
// always allows (path/cycle interiors go 2 -> 3, torus vertices 4 -> 5).
//
// Family growth bounds f(r), valid for every member and every root:
//   path/cycle:  f(0) = 1, f(r) = 2
//   torus:       f(0) = 1, f(r) = 4r
//   tree_ball:   f(0) = 1, f(r) = d(d-1)^(r-1)

inline Graph gen_path(int n) {
    if (n < 3) fail(errc::invalid_params, "path needs n >= 3");
    EdgeList e;
    e.n = n;
    for (int i = 0; i + 1 < n; ++i) e.edges.push_back({i, i + 1});
    return normalize_odd_degrees(e, 3, 3);
}

inline Graph gen_cycle(int n) {
    if (n < 3) fail(errc::invalid_params, "cycle needs n >= 3");
    EdgeList e;
    e.n = n;
    for (int i = 0; i + 1 < n; ++i) e.edges.push_back({i, i + 1});
    e.edges.push_back({0, n - 1});
    return normalize_odd_degrees(e, 3, 3);
}

inline Graph gen_torus(int rows, int cols) {
    if (rows < 3 || cols < 3) fail(errc::invalid_params, "torus needs sides >= 3");
    EdgeList e;
    e.n = rows * cols;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            e.edges.push_back({id(r, c), id(r, (c + 1) % cols)});
            e.edges.push_back({id(r, c), id((r + 1) % rows, c)});
        }
    for (auto& [u, v] : e.edges)
        if (u > v) std::swap(u, v);
    return normalize_odd_degrees(e, 5, 5);
}

// Ball of the d-regular tree: root 0, internal vertices d-1 children,
// depth levels below the root. depth 0 degenerates to a single looped vertex.
inline Graph gen_tree_ball(int d, int depth) {
    if (d < 3 || d % 2 == 0) fail(errc::invalid_params, "tree degree must be odd and >= 3");
    if (depth < 0) fail(errc::invalid_params, "depth must be >= 0");
    EdgeList e;
    e.n = 1;
    std::vector<int> frontier = {0};
    for (int level = 0; level < depth; ++level) {
        std::vector<int> next;
        for (int v : frontier) {
            int kids = (v == 0) ? d : d - 1;
            for (int k = 0; k < kids; ++k) {
                int child = e.n++;
                e.edges.push_back({v, child});
                next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return normalize_odd_degrees(e, d, d);
}

inline std::function<std::int64_t(int)> family_growth_bound(const std::string& kind, int d = 3) {
    if (kind == "path" || kind == "cycle")
        return [](int r) -> std::int64_t { return r == 0 ? 1 : 2; };
    if (kind == "torus")
        return [](int r) -> std::int64_t { return r == 0 ? 1 : 4ll * r; };
    if (kind == "tree_ball")
        // sphere sizes grow like (d-1)^r, which outpaces the discount factor
        // (d+1)/(d-1) for every odd d >= 3, so no weighting budget exists for
        // the family as a whole (finite tree_ball instances are still fine
        // through growth_moment on the concrete graph)
        fail(errc::invalid_params, "tree family growth diverges; bound finite instances directly");
    fail(errc::invalid_params, "unknown family " + kind);
}

// Complete graph K_n, regular of degree n-1 (odd degree needs even n).
inline Graph gen_complete(int n) {
    if (n < 2) fail(errc::invalid_params, "complete graph needs >= 2 vertices");
    EdgeList e;
    e.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.edges.emplace_back(u, v);
    return build_graph(e, n - 1);
}

// Circular ladder: two k-cycles joined by rungs, 2k vertices, 3-regular.
// Outer ring occupies ids 0..k-1, inner ring k..2k-1, rung i -- k+i.
inline Graph gen_circular_ladder(int k) {
    if (k < 3) fail(errc::invalid_params, "circular ladder needs ring length >= 3");
    EdgeList e;
    e.n = 2 * k;
    for (int i = 0; i < k; ++i) {
        e.edges.emplace_back(i, (i + 1) % k);
        e.edges.emplace_back(k + i, k + (i + 1) % k);
        e.edges.emplace_back(i, k + i);
    }
    return build_graph(e, 3);
}

// ---------------------------------------------------------------------------
// Consensus-gadget surgery: replace each edge {i,j} of F by a fresh copy of
// H = K_{d,d} minus one edge {a,b}, wired i-a and j-b. Degrees are preserved,
// so the result is d-regular again, and each H copy forces its two sides to
// internal unanimity by step 2 no matter what the rest of the graph does.

struct GadgetCopy {
    int a = 0, b = 0;             // the splice ports
    std::vector<int> side_a, side_b;
    std::pair<int, int> replaced; // the original edge
};

struct GadgetGraph {
    Graph g;
    int d = 0;
    std::vector<GadgetCopy> copies;
};

inline GadgetGraph gen_gadget_graph(const Graph& base, std::vector<std::pair<int, int>> cut) {
    int d = base.degree(0);
    if (d < 3 || d % 2 == 0) fail(errc::not_regular, "base must be d-regular with odd d >= 3");
    for (int i = 0; i < base.n; ++i)
        if (base.degree(i) != d) fail(errc::not_regular, "base is not regular", i);

    std::set<std::pair<int, int>> edge_set(base.edges.begin(), base.edges.end());
    for (auto& [u, v] : cut) {
        if (u > v) std::swap(u, v);
        if (u == v) fail(errc::invalid_params, "cut must not contain loops", u);
        // An edge outside the graph cannot separate anything. On a finite
        // base every component left by removing a genuine edge set is
        // finite, which is all the unanimity argument needs.
        if (!edge_set.count({u, v}))
            fail(errc::not_separating, "cut edge " + std::to_string(u) + "-" + std::to_string(v) +
                                           " is not an edge of the base");
    }
    std::sort(cut.begin(), cut.end());
    cut.erase(std::unique(cut.begin(), cut.end()), cut.end());

    std::set<std::pair<int, int>> removed(cut.begin(), cut.end());
    EdgeList e;
    e.n = base.n;
    for (auto& ed : base.edges) {
        if (removed.count(ed)) continue;
        if (ed.first == ed.second)
            e.loops.push_back(ed.first);
        else
            e.edges.push_back(ed);
    }

    GadgetGraph out;
    out.d = d;
    for (auto& [i, j] : cut) {
        GadgetCopy copy;
        copy.replaced = {i, j};
        for (int k = 0; k < d; ++k) copy.side_a.push_back(e.n + k);
        for (int k = 0; k < d; ++k) copy.side_b.push_back(e.n + d + k);
        e.n += 2 * d;
        copy.a = copy.side_a[0];
        copy.b = copy.side_b[0];
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) {
                if (x == 0 && y == 0) continue;  // the missing edge {a,b}
                e.edges.push_back({copy.side_a[x], copy.side_b[y]});
            }
        e.edges.push_back({i, copy.a});
        e.edges.push_back({j, copy.b});
        out.copies.push_back(std::move(copy));
    }

    out.g = build_graph(e, d);
    return out;
}

// ---------------------------------------------------------------------------
// Bond percolation stand-in for invariant random subgraphs: keep each
// non-loop edge of the base independently with probability q, take the
// largest component, relabel it densely, and re-normalize parity. Loops of
// the base are dropped first; they are parity devices, and normalization
// re-issues them wherever the surviving degree turned even (always within
// the base degree, since an even survivor lost at least one edge or had a
// loop to begin with).

struct PercolationResult {
    Graph g;
    std::vector<int> original_id;  // component vertex -> base vertex, ascending
    std::int64_t kept_edges = 0;   // survivors before taking the component
};

inline PercolationResult gen_percolation_subgraph(const Graph& base, double q,
                                                  std::uint64_t seed) {
    if (q < 0.0 || q > 1.0) fail(errc::invalid_params, "keep probability must be in [0,1]");
    Rng rng(seed);

    // base.edges is sorted, so the draw order is part of the format
    std::vector<std::pair<int, int>> kept;
    for (auto& [u, v] : base.edges) {
        if (u == v) continue;
        if (rng.uniform01() < q) kept.push_back({u, v});
    }

    std::vector<std::vector<int>> nb(base.n);
    for (auto& [u, v] : kept) {
        nb[u].push_back(v);
        nb[v].push_back(u);
    }
    std::vector<int> comp(base.n, -1);
    int best_root = -1;
    std::int64_t best_size = 0;
    for (int s = 0; s < base.n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack = {s};
        comp[s] = s;
        std::int64_t size = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ++size;
            for (int v : nb[u])
                if (comp[v] < 0) {
                    comp[v] = s;
                    stack.push_back(v);
                }
        }
        if (size > best_size) {  // ties resolve to the smallest root
            best_size = size;
            best_root = s;
        }
    }
    if (best_size < 3)
        fail(errc::degenerate_component, "largest percolation component has " +
                                             std::to_string(best_size) + " vertices");

    PercolationResult out;
    out.kept_edges = std::int64_t(kept.size());
    std::vector<int> local(base.n, -1);
    for (int v = 0; v < base.n; ++v)
        if (comp[v] == best_root) {
            local[v] = int(out.original_id.size());
            out.original_id.push_back(v);
        }

    EdgeList e;
    e.n = int(out.original_id.size());
    for (auto& [u, v] : kept)
        if (local[u] >= 0) e.edges.push_back({local[u], local[v]});

    std::vector<int> caps(e.n);
    for (int v = 0; v < e.n; ++v) caps[v] = base.degree(out.original_id[v]);
    out.g = normalize_odd_degrees(e, caps, base.d_max);
    return out;
}

// ---------------------------------------------------------------------------
// Random connected odd-degree graphs for the randomized suites: a uniform
// attachment tree keeps things connected and shallow, extra random edges
// thicken it, and loop normalization restores parity. Degrees stay strictly
// below d_max before loops so normalization never gets stuck.

inline Graph random_odd_graph(int n_max, int d_max, Rng& rng) {
    if (n_max < 3 || d_max < 3 || d_max % 2 == 0)
        fail(errc::invalid_params, "need n_max >= 3 and odd d_max >= 3");
    int n = rng.uniform_int(3, n_max);
    EdgeList e;
    e.n = n;
    std::vector<int> deg(n, 0);
    for (int v = 1; v < n; ++v) {
        int u;
        do {
            u = int(rng.below(std::uint64_t(v)));
        } while (deg[u] >= d_max - 1);
        e.edges.push_back({u, v});
        ++deg[u];
        ++deg[v];
    }
    std::set<std::pair<int, int>> present(e.edges.begin(), e.edges.end());
    int extra = rng.uniform_int(0, n);
    for (int k = 0; k < extra; ++k) {
        int u = int(rng.below(std::uint64_t(n)));
        int v = int(rng.below(std::uint64_t(n)));
        if (u == v) continue;
        auto key = std::minmax(u, v);
        if (present.count(key)) continue;
        if (deg[u] >= d_max - 1 || deg[v] >= d_max - 1) continue;
        present.insert(key);
        e.edges.push_back(key);
        ++deg[u];
        ++deg[v];
    }
    return normalize_odd_degrees(e, d_max, d_max);
}

}  // namespace majority
